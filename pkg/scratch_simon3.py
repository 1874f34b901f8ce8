"""SIMON (0,1) margin-2 with short-playout pools."""
import sys, time, statistics
sys.path.insert(0, "src")
from vistacrypt.ciphers import simon32, DiffState
from vistacrypt.pools import build_pool
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               SearchMode, Technique, run_search)

simon = simon32()

def cell(tag, pool, initial, rounds, target, policy, nruns=30, cap=65427, seed0=300):
    t0 = time.perf_counter()
    line = f"  {tag:40s}"
    meds = {}
    for tech in Technique:
        ctx = SamplingContext.from_pool(pool, tech)
        iters, weights = [], []
        for s in range(seed0, seed0 + nruns):
            cfg = SearchConfig(spec=simon, rounds_to_attack=rounds, target_weight=target,
                               max_iterations=cap, technique=tech, seed=s,
                               initial=DiffState(*initial), draw_policy=policy)
            r = run_search(cfg, ctx)
            iters.append(r.iterations); weights.append(r.best_weight)
        conv = sum(1 for w in weights if w <= target) / nruns
        med = statistics.median(iters)
        meds[tech] = med
        line += f" {'b' if tech is Technique.BASELINE else 'v'}={med:7.0f}({conv:4.0%})"
    line += f" r={meds[Technique.VISTA]/meds[Technique.BASELINE]:5.2f} {time.perf_counter()-t0:.0f}s"
    print(line, flush=True)

for pr in [2, 3, 4]:
    pool = build_pool(simon, pr, 10000, DiffState(1, 0), 42)
    print(f"pool rounds={pr}: {len(pool.counts)} distinct", flush=True)
    cell(f"pr={pr} (0,1) t30 REJECT", pool, (0, 1), 10, 30, DrawPolicy.REJECT)
    cell(f"pr={pr} (0,1) t30 MASK", pool, (0, 1), 10, 30, DrawPolicy.MASK)
