"""Sweep: retry cap x pool rule x workload -> conv/median/ratio."""
import sys, time, statistics, random
sys.path.insert(0, "src")
from collections import Counter
import numpy as np
import vistacrypt.search as vs
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import (DifferentialPool, PoolProvenance, TransitionRecord,
                              define_sample)
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               SearchMode, Technique, run_search)

N, FULL = 16, 0xFFFF

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
            if rule == "dense75":
                c = (rr(65536) | rr(65536)) & m
            elif rule == "dense625":
                c = (rr(65536) | (rr(65536) & rr(65536))) & m
            elif rule == "mix50":
                c = (rr(65536) | rr(65536)) & m if rr(2) else rr(65536) & m
            elif rule == "uniform":
                c = rr(65536) & m
            recs.append(TransitionRecord(a, b, c, bin(m).count("1")))
            L, R = R ^ c ^ (((L << rl) | (L >> (N - rl))) & FULL), L
    counts = dict(Counter(r.c for r in recs))
    return DifferentialPool(recs, counts, spec, PoolProvenance(playouts, rounds, seed))

def run_cell(spec, pool, sample, initial, transitions, target, policy, K, mode=None,
             split=None, nruns=20, cap=65427, seed0=300):
    vs._REJECT_ATTEMPTS = K
    out = {}
    for tech, vals in [(Technique.BASELINE, pool.c_values()),
                       (Technique.VISTA, sample.values)]:
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
    return out

simon, simeck = simon32(), simeck32()

for rule in ["dense75", "dense625", "mix50"]:
    spool = gen_pool(simon, 10, 10000, (1, 0), 42, rule)
    ssamp = define_sample(spool, 5.0)
    kpool = gen_pool(simeck, 10, 10000, (1, 0), 42, rule)
    ksamp = define_sample(kpool, 5.0)
    pv = float(np.var(spool.c_values())); sv = float(np.var(ssamp.values, ddof=1))
    print(f"=== rule={rule}  simon pv-sv={pv-sv:+.2e}")
    for policy, K in [(DrawPolicy.MASK, 0), (DrawPolicy.REJECT, 8),
                      (DrawPolicy.REJECT, 32), (DrawPolicy.REJECT, 128)]:
        t0 = time.perf_counter()
        s = run_cell(simon, spool, ssamp, (0, 1), 9, 30, policy, K)
        k = run_cell(simeck, kpool, ksamp, (0, 1), 10, 28, policy, K)
        (sbm, sbc), (svm, svc) = s[Technique.BASELINE], s[Technique.VISTA]
        (kbm, kbc), (kvm, kvc) = k[Technique.BASELINE], k[Technique.VISTA]
        print(f"  {policy.value}{K:4d}: SIMON b={sbm:7.0f}({sbc:4.0%}) v={svm:7.0f}({svc:4.0%}) "
              f"r={svm/sbm:5.2f} | SIMECK b={kbm:7.0f}({kbc:4.0%}) v={kvm:7.0f}({kvc:4.0%}) "
              f"r={kvm/kbm:5.2f} | {time.perf_counter()-t0:.0f}s")
