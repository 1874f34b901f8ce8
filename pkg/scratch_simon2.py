"""SIMON start scan on the final engine (fast reject draws, fencepost rounds)."""
import sys, time, statistics
sys.path.insert(0, "src")
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import build_pool
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               SearchMode, Technique, run_search)

simon, simeck = simon32(), simeck32()
spool = build_pool(simon, 10, 10000, DiffState(1, 0), 42)
kpool = build_pool(simeck, 10, 10000, DiffState(1, 0), 42)

def cell(tag, spec, pool, initial, rounds, target, policy, nruns=30, cap=65427,
         mode=SearchMode.ONE_WAY, split=None, seed0=300):
    t0 = time.perf_counter()
    ctxs = {t: SamplingContext.from_pool(pool, t) for t in Technique}
    line = f"  {tag:42s}"
    meds = {}
    for tech in Technique:
        iters, weights = [], []
        for s in range(seed0, seed0 + nruns):
            cfg = SearchConfig(spec=spec, rounds_to_attack=rounds, target_weight=target,
                               max_iterations=cap, technique=tech, seed=s,
                               initial=DiffState(*initial), draw_policy=policy,
                               mode=mode, split=split)
            r = run_search(cfg, ctxs[tech])
            iters.append(r.iterations); weights.append(r.best_weight)
        conv = sum(1 for w in weights if w <= target) / nruns
        med = statistics.median(iters)
        meds[tech] = med
        line += f" {'b' if tech is Technique.BASELINE else 'v'}={med:7.0f}({conv:4.0%})"
    line += f" r={meds[Technique.VISTA]/meds[Technique.BASELINE]:5.2f} {time.perf_counter()-t0:.0f}s"
    print(line, flush=True)

print("SIMON 10 rounds (9 transitions), target 30, pool@(1,0):", flush=True)
cell("(0,17) margin0 REJECT", simon, spool, (0, 0x11), 10, 30, DrawPolicy.REJECT)
cell("(0,17) margin0 MASK", simon, spool, (0, 0x11), 10, 30, DrawPolicy.MASK)
cell("(5,0)  margin2 REJECT", simon, spool, (5, 0), 10, 30, DrawPolicy.REJECT)
print("SIMECK 11 rounds (10 transitions), target 28, pool@(1,0):", flush=True)
cell("(1,0)  margin0 REJECT", simeck, kpool, (1, 0), 11, 28, DrawPolicy.REJECT)
print("SIMON two-way 11 rounds split (6,5), target 20, middle (1,0):", flush=True)
cell("two-way REJECT", simon, spool, (1, 0), 11, 20, DrawPolicy.REJECT,
     mode=SearchMode.TWO_WAY, split=(6, 5))
cell("two-way MASK", simon, spool, (1, 0), 11, 20, DrawPolicy.MASK,
     mode=SearchMode.TWO_WAY, split=(6, 5))
