"""Optima for SIMON32/SIMECK32 from single-bit starts at higher budgets."""
import sys, time
sys.path.insert(0, "src")

N = 16
FULL = (1 << N) - 1

def rotl(x, r):
    return ((x << r) | (x >> (N - r))) & FULL

def submasks(m):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m

def optimal(start, depth, budget, rots):
    r1, r2, rl = rots
    layer = {start: 0}
    per_depth = []
    for d in range(depth):
        nxt = {}
        rem = depth - d - 1
        lb = 2 * (rem // 2)
        for (L, R), cost in layer.items():
            sup = rotl(L, r1) | rotl(L, r2)
            ncost = cost + bin(sup).count("1")
            if ncost + lb > budget:
                continue
            base = R ^ rotl(L, rl)
            for c in submasks(sup):
                st = (base ^ c, L)
                if nxt.get(st, 1 << 30) > ncost:
                    nxt[st] = ncost
        layer = nxt
        per_depth.append(min(layer.values()) if layer else None)
        if not layer:
            break
    return per_depth

for name, rots in [("simon", (1, 8, 2)), ("simeck", (0, 5, 1))]:
    for start in [(1, 0), (0, 1)]:
        t0 = time.perf_counter()
        res = optimal(start, 11, 34, rots)
        print(f"{name} start={start} budget=34: {res} ({time.perf_counter()-t0:.0f}s)")
