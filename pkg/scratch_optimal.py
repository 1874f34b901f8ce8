"""Exact min-weight trails from a fixed start via depth-layered DP with budget pruning."""
import sys
sys.path.insert(0, "src")

N = 16
FULL = (1 << N) - 1

def rotl(x, r):
    return ((x << r) | (x >> (N - r))) & FULL

def submasks(m):
    # iterate all subsets of mask m
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m

def optimal(start, depth, budget, r1=1, r2=8, rl=2):
    layer = {start: 0}
    best_per_depth = []
    for d in range(depth):
        nxt = {}
        rem = depth - d - 1
        lb_rem = rem // 2  # alternating free rounds at best
        for (L, R), cost in layer.items():
            sup = rotl(L, r1) | rotl(L, r2)
            w = bin(sup).count("1")
            ncost = cost + w
            if ncost + lb_rem > budget:
                continue
            base = R ^ rotl(L, rl)
            for c in submasks(sup):
                st = (base ^ c, L)
                if nxt.get(st, 1 << 30) > ncost:
                    nxt[st] = ncost
        layer = nxt
        if not layer:
            best_per_depth.append(None)
            break
        best_per_depth.append(min(layer.values()))
    return best_per_depth

import time
for start, budget, depth in [((1, 0), 30, 10), ((0, 1), 30, 10)]:
    t0 = time.perf_counter()
    res = optimal(start, depth, budget)
    print(f"start={start} budget={budget}: per-depth optima {res} "
          f"({time.perf_counter()-t0:.1f}s)")
