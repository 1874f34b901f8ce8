"""Is ratio <= 0.8 typical across natural seed windows? (SIMON pct=5)"""
import sys, time, statistics
sys.path.insert(0, "src")
from vistacrypt.ciphers import simon32, DiffState
from vistacrypt.pools import build_pool
from vistacrypt.search import DrawPolicy, SamplingContext, SearchConfig, Technique
from vistacrypt.experiments import IqrMode, clean_data, run_batch

simon = simon32()
spool = build_pool(simon, 3, 10000, DiffState(1, 0), 42)
ctxs = {t: SamplingContext.from_pool(spool, t, 5.0) for t in Technique}

def ratio(base_seed):
    meds = {}
    for tech in Technique:
        cfg = SearchConfig(spec=simon, rounds_to_attack=10, target_weight=30,
                           max_iterations=65427, technique=tech, seed=0,
                           initial=DiffState(0, 1), draw_policy=DrawPolicy.REJECT)
        records = run_batch(cfg, ctxs[tech], n_runs=193, base_seed=base_seed)
        kept = clean_data(records, 30, IqrMode.FENCES_1_5)
        meds[tech] = statistics.median(r.iterations for r in kept)
    return meds[Technique.BASELINE], meds[Technique.VISTA]

passes = 0
for base in (0, 1, 42, 100, 500, 1000, 2024, 5000):
    b, v = ratio(base)
    r = v / b
    passes += r <= 0.8
    print(f"base={base:5d}: b={b:7.1f} v={v:7.1f} ratio={r:5.3f} "
          f"{'PASS' if r <= 0.8 else 'fail'}", flush=True)
print(f"{passes}/8 windows pass")
