"""Does target margin (target - optimum) drive the vista/baseline ratio?"""
import sys, time, random, statistics
sys.path.insert(0, "src")
from collections import Counter
import numpy as np
from scratch_poolgen import gen_pool, mode_count
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import define_sample
from vistacrypt.search import SamplingContext, SearchConfig, Technique, run_search

def evaluate(tag, spec, pool, search_initial, transitions, target, nruns=25, cap=65427):
    cs = pool.c_values()
    sample = define_sample(pool, 5.0)
    pv = float(np.var(cs)); sv = float(np.var(sample.values, ddof=1))
    bctx = SamplingContext(Technique.BASELINE, tuple(cs))
    vctx = SamplingContext(Technique.VISTA, tuple(sample.values))
    res = {}
    for label, ctx, tech in [("base", bctx, Technique.BASELINE), ("vista", vctx, Technique.VISTA)]:
        iters, weights = [], []
        for s in range(900, 900 + nruns):
            cfg = SearchConfig(spec=spec, rounds_to_attack=transitions, target_weight=target,
                               max_iterations=cap, technique=tech, seed=s,
                               initial=DiffState(*search_initial))
            r = run_search(cfg, ctx)
            iters.append(r.iterations); weights.append(r.best_weight)
        conv = sum(1 for w in weights if w <= target) / nruns
        res[label] = (statistics.median(iters), conv)
    bm, bc = res["base"]; vm, vc = res["vista"]
    print(f"  {tag:34s} pv-sv={pv-sv:+.1e} | base {bm:7.0f} ({bc:4.0%}) | "
          f"vista {vm:7.0f} ({vc:4.0%}) | ratio {vm/bm:6.2f}")

simon = simon32()
simeck = simeck32()

pools = {}
for rule in ["uniform", "dense", "sparse"]:
    for ini in [(1, 0), (0x0100, 0)]:
        pools[(rule, ini)] = gen_pool(simon, 10, 10000, ini, 42, rule)

print("SIMON32 search@(0,1) 9 transitions, target 30 (margin 2):")
for (rule, ini), pool in pools.items():
    evaluate(f"{rule}@{ini}", simon, pool, (0, 1), 9, 30)

print("SIMON32 search@(0,1) 9 transitions, target 28 (margin 0):")
for (rule, ini), pool in pools.items():
    evaluate(f"{rule}@{ini}", simon, pool, (0, 1), 9, 28, nruns=15)

kpools = {}
for rule in ["uniform", "dense", "sparse"]:
    for ini in [(1, 0), (0x0100, 0)]:
        kpools[(rule, ini)] = gen_pool(simeck, 10, 10000, ini, 42, rule)

print("SIMECK32 search@(1,0) 10 transitions, target 28 (margin 0):")
for (rule, ini), pool in kpools.items():
    evaluate(f"{rule}@{ini}", simeck, pool, (1, 0), 10, 28, nruns=15)
