"""SIMON hardness scan over candidate starts (self-contained)."""
import sys, time, statistics, random
sys.path.insert(0, "src")
from collections import Counter
import vistacrypt.search as vs
from vistacrypt.ciphers import simon32, DiffState
from vistacrypt.pools import DifferentialPool, PoolProvenance, TransitionRecord, define_sample
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               Technique, run_search)

N, FULL = 16, 0xFFFF
vs._REJECT_ATTEMPTS = 256

def gen_pool(spec, rounds, playouts, initial, seed):
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
            c = (rr(65536) | (rr(65536) & rr(65536))) & m
            recs.append(TransitionRecord(a, b, c, bin(m).count("1")))
            L, R = R ^ c ^ (((L << rl) | (L >> (N - rl))) & FULL), L
    counts = dict(Counter(r.c for r in recs))
    return DifferentialPool(recs, counts, spec, PoolProvenance(playouts, rounds, seed))

simon = simon32()
pool = gen_pool(simon, 10, 10000, (1, 0), 42)
sample = define_sample(pool, 5.0)
bvals = tuple(pool.c_values())
vvals = tuple(sample.values)

def cell(tag, initial, target, policy, nruns=30, cap=65427):
    t0 = time.perf_counter()
    line = f"  {tag:40s}"
    meds = {}
    for tech, vals in [(Technique.BASELINE, bvals), (Technique.VISTA, vvals)]:
        ctx = SamplingContext(tech, vals)
        iters, weights = [], []
        for s in range(300, 300 + nruns):
            cfg = SearchConfig(spec=simon, rounds_to_attack=9, target_weight=target,
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

print("SIMON 9 transitions, pool p=0.625@(1,0) seed42:", flush=True)
cell("(0,17) t30 margin0 REJECT", (0, 0x11), 30, DrawPolicy.REJECT)
cell("(0,17) t30 margin0 MASK", (0, 0x11), 30, DrawPolicy.MASK)
cell("(5,0)  t30 margin2 REJECT", (5, 0), 30, DrawPolicy.REJECT)
cell("(5,0)  t28 margin0 REJECT", (5, 0), 28, DrawPolicy.REJECT)
