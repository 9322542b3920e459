"""Growing a covering around one curve by backtracking.

Run: python3 demos/04_search.py
"""
import time

from paperfold.covering import Exhausted, extend_to_covering, validate_covering
from paperfold.curves import folding_curve

for dirs in [(1, 1, 1, 1, 1, 1), (1, -1, 1, -1, 1, -1), (1, 1, -1, 1, 1, -1)]:
    seed = folding_curve(dirs)
    v = seed.vertices()
    lo, hi = v.min(axis=0) - 2, v.max(axis=0) + 2
    window = (*lo.tolist(), *hi.tolist())
    t0 = time.perf_counter()
    try:
        cov = extend_to_covering(seed, window, budget=20000)
    except Exhausted as exc:
        print(dirs, "gave up:", exc)
        continue
    rep = validate_covering(cov)
    print(dirs, f"{cov.meta['nodes']} nodes, {len(cov.pieces)} runs,",
          f"valid={rep.ok}, {time.perf_counter() - t0:.1f} s")
