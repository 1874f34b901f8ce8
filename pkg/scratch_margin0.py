"""Margin-0 workloads under the rejection machinery."""
import sys, time, statistics
sys.path.insert(0, "src")
import numpy as np
import vistacrypt.search as vs
from scratch_tune import gen_pool
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import define_sample
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               SearchMode, Technique, run_search)

vs._REJECT_ATTEMPTS = 256

def cell(tag, spec, pool, initial, transitions, target, policy, nruns=30,
         cap=65427, mode=None, split=None, seed0=300):
    sample = define_sample(pool, 5.0)
    t0 = time.perf_counter()
    out = {}
    for tech, vals in [(Technique.BASELINE, pool.c_values()), (Technique.VISTA, sample.values)]:
        ctx = SamplingContext(tech, tuple(vals))
        iters, weights = [], []
        for s in range(seed0, seed0 + nruns):
            cfg = SearchConfig(spec=spec, rounds_to_attack=transitions, target_weight=target,
                               max_iterations=cap, technique=tech, seed=s,
                               initial=DiffState(*initial), draw_policy=policy,
                               mode=mode or SearchMode.ONE_WAY, split=split)
            r = run_search(cfg, ctx)
            iters.append(r.iterations); weights.append(r.best_weight)
        conv = sum(1 for w in weights if w <= target) / nruns
        out[tech] = (statistics.median(iters), conv)
    (bm, bc), (vm, vc) = out[Technique.BASELINE], out[Technique.VISTA]
    print(f"  {tag:44s} b={bm:7.0f}({bc:4.0%}) v={vm:7.0f}({vc:4.0%}) "
          f"r={vm/bm:5.2f} {time.perf_counter()-t0:.0f}s")

simon, simeck = simon32(), simeck32()
spool = gen_pool(simon, 10, 10000, (1, 0), 42, 0.625)
kpool = gen_pool(simeck, 10, 10000, (1, 0), 42, 0.625)

print("margin-0 one-way cells (pool p=0.625 @ (1,0), K=256):")
cell("SIMON (1,1) 9t t30 REJECT", simon, spool, (1, 1), 9, 30, DrawPolicy.REJECT)
cell("SIMON (1,1) 9t t30 MASK", simon, spool, (1, 1), 9, 30, DrawPolicy.MASK)
cell("SIMECK (1,0) 10t t28 REJECT", simeck, kpool, (1, 0), 10, 28, DrawPolicy.REJECT)
cell("SIMECK (256,0) 10t t28 REJECT", simeck, kpool, (0x100, 0), 10, 28, DrawPolicy.REJECT)
