"""Scan small starts for 9-transition optimum == target."""
import sys, time
sys.path.insert(0, "src")
from scratch_optimal2 import optimal

starts = [(1, 1), (3, 0), (0, 3), (2, 1), (1, 2), (5, 0), (0, 5), (9, 0), (0, 9),
          (0x11, 0), (0, 0x11), (1, 4), (4, 1), (0x101, 0), (0, 0x101), (3, 1)]
print("SIMON 9-transition optima (budget 31):")
for st in starts:
    t0 = time.perf_counter()
    res = optimal(st, 9, 31, (1, 8, 2))
    print(f"  start={st}: opt9={res[-1] if len(res) == 9 else None} "
          f"(chain {res}) {time.perf_counter()-t0:.0f}s", flush=True)
