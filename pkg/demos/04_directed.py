"""
Directed audits
===============

With one-way audits a node's strength is its reach set.  The directed
detector trusts the node reaching the most survivors; the directed attack
corrupts a reach separator plus the reach set of a top node.
"""
from corruption_game import DiGraph, exact_m_directed, min_sum_directed, directed_attack, detect_one_directed, truthful_fill

# two directed 3-cycles joined by one arc
d = DiGraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
print("m(D) =", exact_m_directed(d))
sep = min_sum_directed(d)
print("reach separator", sorted(sep.separator), "k =", sep.k)
plan = directed_attack(d, sep)
print("attack corrupts", sorted(plan.bad), "certified:", plan.certify())

out = detect_one_directed(d, truthful_fill(d, [4]), budget=1)
print("one liar at 4 -> declared", sorted(out.declared_good), "certified:", out.certified)
