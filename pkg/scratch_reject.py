"""Rejection-policy draw: does vista/baseline flip?"""
import sys, time, statistics
sys.path.insert(0, "src")
import numpy as np
from scratch_poolgen import gen_pool
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import define_sample
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               Technique, run_search)

def evaluate(tag, spec, pool, search_initial, transitions, target, policy,
             nruns=25, cap=65427):
    cs = pool.c_values()
    sample = define_sample(pool, 5.0)
    bctx = SamplingContext(Technique.BASELINE, tuple(cs))
    vctx = SamplingContext(Technique.VISTA, tuple(sample.values))
    res = {}
    t0 = time.perf_counter()
    for label, ctx, tech in [("base", bctx, Technique.BASELINE), ("vista", vctx, Technique.VISTA)]:
        iters, weights = [], []
        for s in range(900, 900 + nruns):
            cfg = SearchConfig(spec=spec, rounds_to_attack=transitions, target_weight=target,
                               max_iterations=cap, technique=tech, seed=s,
                               initial=DiffState(*search_initial), draw_policy=policy)
            r = run_search(cfg, ctx)
            iters.append(r.iterations); weights.append(r.best_weight)
        conv = sum(1 for w in weights if w <= target) / nruns
        res[label] = (statistics.median(iters), conv)
    bm, bc = res["base"]; vm, vc = res["vista"]
    print(f"  {tag:28s} | base {bm:7.0f} ({bc:4.0%}) | vista {vm:7.0f} ({vc:4.0%}) "
          f"| ratio {vm/bm:6.2f} | {time.perf_counter()-t0:.0f}s")

simon = simon32()
simeck = simeck32()

print("REJECT policy, SIMON32 search@(0,1) 9 trans target 30 (margin 2):")
for rule in ["uniform", "sparse", "dense"]:
    pool = gen_pool(simon, 10, 10000, (1, 0), 42, rule)
    evaluate(f"{rule}@(1,0)", simon, pool, (0, 1), 9, 30, DrawPolicy.REJECT)

print("REJECT policy, SIMON32 search@(0,1) 9 trans target 28 (margin 0):")
for rule in ["uniform", "sparse", "dense"]:
    pool = gen_pool(simon, 10, 10000, (1, 0), 42, rule)
    evaluate(f"{rule}@(1,0)", simon, pool, (0, 1), 9, 28, DrawPolicy.REJECT, nruns=15)

print("REJECT policy, SIMECK32 search@(1,0) 10 trans target 28 (margin 0):")
for rule in ["uniform", "sparse", "dense"]:
    pool = gen_pool(simeck, 10, 10000, (1, 0), 42, rule)
    evaluate(f"{rule}@(1,0)", simeck, pool, (1, 0), 10, 28, DrawPolicy.REJECT, nruns=15)
