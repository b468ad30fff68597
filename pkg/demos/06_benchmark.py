"""
Detection scales linearly
=========================

Times the single-node detector on random graphs with growing edge counts
and fits the log-log slope.
"""
from corruption_game.cli import bench_detection

res = bench_detection([10_000, 100_000, 1_000_000], seed=7, repeats=2)
for row in res["runs"]:
    print(f"{row['edges']:>9d} edges  {row['seconds']:.3f}s")
print("fitted exponent:", round(res["exponent"], 3))
