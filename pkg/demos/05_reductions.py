"""
Reduction gadgets
=================

The auxiliary graph turns a d-regular source into a bipartite d-regular
graph on 2|E| nodes.  When the source splits into parts with few crossing
edges, the yes-case attack hides everything cheaply.
"""
from corruption_game import generate, structural_certificate
from corruption_game.reductions import (
    clustered_regular, sse_auxiliary, partition_certificate, yes_case_attack,
    clique_append, np_gadget,
)

g, parts = clustered_regular(6, 10, 8)
cert = partition_certificate(g, parts)
print("source:", g.n, "nodes,", g.m, "edges; part expansion", cert.expansions[0])

aux = sse_auxiliary(g)
print("auxiliary:", aux.graph.n, "nodes, degrees", set(aux.graph.degree().tolist()))
plan = yes_case_attack(aux, cert)
d = plan.details
print(f"yes-case budget {plan.budget_used} = {len(d['cross'])} cross + {len(d['copies'])} copies"
      f" + {len(d['touching'] - d['cross'])} inner edges; valid: {structural_certificate(plan)}")

path = generate("path", n=4)
print("clique append, delta=1/2:", clique_append(path, "1/2"))
info = np_gadget(generate("path", n=3), M=2, n=4)
print("np gadget:", info.metadata())
