"""
Critical numbers and the attacks that reach them
================================================

The oracle computes m(G) exactly on small graphs.  The separator attack
corrupts a separator plus one leftover component; the exhaustive checker
confirms that no node can then be certified.
"""
from corruption_game import generate, exact_m, min_sum, separator_attack, detect_one_undirected

for name, g in [("star S_5", generate("star", n=5)),
                ("K_6", generate("complete", n=6)),
                ("K_{2,3}", generate("complete_bipartite", a=2, b=3)),
                ("P_7", generate("path", n=7))]:
    sep = min_sum(g)
    plan = separator_attack(g, sep)
    print(f"{name:9s} m={exact_m(g)}  min_sum={sep.objective}  attack budget={plan.budget_used}"
          f"  certified={plan.certify()}")

# what the detector sees after the star attack
star = generate("star", n=5)
plan = separator_attack(star, min_sum(star))
print("corrupt:", sorted(plan.bad))
for c in plan.claims:
    print("  ", c.auditor, "says", c.subject, "is", c.verdict.value)
out = detect_one_undirected(star, plan.reports(), plan.budget_used)
print("detector declares", sorted(out.declared_good), "certified:", out.certified)
