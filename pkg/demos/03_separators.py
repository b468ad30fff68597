"""
Vertex separators: exact and heuristic
======================================

min_sum minimizes |S| + k over k-vertex separators.  The exact solver is
for desk-sized graphs; the heuristic (peeling plus max-flow vertex cuts)
always returns a valid separator and scales further.
"""
import time

from corruption_game import generate, exact_separator, heuristic_separator, min_sum, approx_min_sum

g = generate("grid", rows=4, cols=5)
for k in (1, 2, 4, 8):
    ex = exact_separator(g, k)
    he = heuristic_separator(g, k, seed=0)
    print(f"k={k}: exact |S|={len(ex.separator)}  heuristic |S|={len(he.separator)}  profile {list(he.component_profile)}")

print("exact min_sum:", min_sum(g).objective, " heuristic sweep:", approx_min_sum(g).objective)

# heuristic on something bigger
big = generate("erdos_renyi", seed=3, n=200, m=500)
t0 = time.perf_counter()
res = approx_min_sum(big, seed=0)
print(f"n=200: |S|={len(res.separator)} k={res.k} objective={res.objective} ({time.perf_counter() - t0:.1f}s)")
