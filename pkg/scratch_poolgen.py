"""Testbench: pool generation rules vs acceptance-relevant statistics."""
import sys, time, random, statistics
sys.path.insert(0, "src")
from collections import Counter
import numpy as np
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import DifferentialPool, PoolProvenance, TransitionRecord, define_sample
from vistacrypt.search import SamplingContext, SearchConfig, Technique, run_search

N = 16
FULL = (1 << N) - 1

def gen_pool(spec, rounds, playouts, initial, seed, rule):
    rng = random.Random(seed)
    rr = rng.randrange
    r1, r2, rl = spec.and_rot_1, spec.and_rot_2, spec.lin_rot
    recs = []
    for _ in range(playouts):
        L, R = initial
        for _ in range(rounds):
            a = ((L << r1) | (L >> (N - r1))) & FULL
            b = ((L << r2) | (L >> (N - r2))) & FULL
            m = a | b
            if rule == "uniform":
                c = rr(65536) & m
            elif rule == "dense":
                c = (rr(65536) | rr(65536)) & m
            elif rule == "sparse":
                c = rr(65536) & rr(65536) & m
            elif rule == "mix":
                c = (rr(65536) | rr(65536)) & m if rr(2) else rr(65536) & m
            recs.append(TransitionRecord(a, b, c, bin(m).count("1")))
            L, R = R ^ c ^ (((L << rl) | (L >> (N - rl))) & FULL), L
    counts = dict(Counter(r.c for r in recs))
    return DifferentialPool(recs, counts, spec, PoolProvenance(playouts, rounds, seed))

def mode_count(values, bins=64):
    hist, _ = np.histogram(values, bins=bins, range=(0, 65536))
    modes = 0
    for i in range(bins):
        left = hist[i - 1] if i > 0 else -1
        right = hist[i + 1] if i < bins - 1 else -1
        if hist[i] > left and hist[i] > right and hist[i] > 0.005 * len(values):
            modes += 1
    return modes

def eval_rule(spec_name, spec, rule, pool_initial, search_initial, transitions,
              target, nruns=25, cap=65427):
    pool = gen_pool(spec, 10, 10000, pool_initial, 42, rule)
    cs = pool.c_values()
    sample = define_sample(pool, 5.0)
    pv = float(np.var(cs))
    sv = float(np.var(sample.values, ddof=1))
    bctx = SamplingContext(Technique.BASELINE, tuple(cs))
    vctx = SamplingContext(Technique.VISTA, tuple(sample.values))
    out = {}
    t0 = time.perf_counter()
    for label, ctx, tech in [("base", bctx, Technique.BASELINE), ("vista", vctx, Technique.VISTA)]:
        iters, weights = [], []
        for s in range(500, 500 + nruns):
            cfg = SearchConfig(spec=spec, rounds_to_attack=transitions, target_weight=target,
                               max_iterations=cap, technique=tech, seed=s,
                               initial=DiffState(*search_initial))
            res = run_search(cfg, ctx)
            iters.append(res.iterations); weights.append(res.best_weight)
        conv = sum(1 for w in weights if w <= target) / nruns
        out[label] = (statistics.median(iters), conv)
    dt = time.perf_counter() - t0
    bm, bc = out["base"]; vm, vc = out["vista"]
    print(f"{spec_name:8s} {rule:8s} pool@{pool_initial} search@{search_initial}: "
          f"pv-sv={pv-sv:+.2e} modes={mode_count(cs)} distinct={len(pool.counts)} "
          f"| base med={bm:.0f} conv={bc:.0%} | vista med={vm:.0f} conv={vc:.0%} "
          f"| ratio={vm/bm:.2f} ({dt:.0f}s)")

simon = simon32()
for rule in ["uniform", "dense", "sparse", "mix"]:
    eval_rule("simon32", simon, rule, (1, 0), (0, 1), 9, 30)
eval_rule("simon32", simon, "uniform", (0x0100, 0), (0, 1), 9, 30)
eval_rule("simon32", simon, "dense", (0x0100, 0), (0, 1), 9, 30)
