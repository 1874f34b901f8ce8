"""Final config selection: true protocol x two seed windows."""
import sys, time, statistics
sys.path.insert(0, "src")
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import build_pool
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               Technique)
from vistacrypt.experiments import IqrMode, clean_data, run_batch

def protocol(spec, pool, initial, rounds, target, percent, base_seed, n=193,
             cap=65427, policy=DrawPolicy.REJECT):
    meds, convs = {}, {}
    for tech in Technique:
        ctx = SamplingContext.from_pool(pool, tech, percent)
        cfg = SearchConfig(spec=spec, rounds_to_attack=rounds, target_weight=target,
                           max_iterations=cap, technique=tech, seed=0,
                           initial=DiffState(*initial), draw_policy=policy)
        records = run_batch(cfg, ctx, n_runs=n, base_seed=base_seed)
        kept = clean_data(records, target, IqrMode.FENCES_1_5)
        meds[tech] = statistics.median(r.iterations for r in kept) if kept else float("nan")
        convs[tech] = sum(1 for r in records if r.best_weight <= target) / n
    return meds, convs

simon, simeck = simon32(), simeck32()
spool = build_pool(simon, 3, 10000, DiffState(1, 0), 42)
kpool = build_pool(simeck, 3, 10000, DiffState(1, 0), 42)

for name, spec, pool, initial, rounds, target in [
        ("SIMON", simon, spool, (0, 1), 10, 30),
        ("SIMECK", simeck, kpool, (1, 0), 11, 28)]:
    for pct in (2.0, 3.0, 5.0):
        t0 = time.perf_counter()
        rows = []
        for base in (1, 501):
            meds, convs = protocol(spec, pool, initial, rounds, target, pct, base)
            ratio = meds[Technique.VISTA] / meds[Technique.BASELINE]
            rows.append(f"seed{base}: b={meds[Technique.BASELINE]:7.1f} "
                        f"v={meds[Technique.VISTA]:7.1f} r={ratio:5.3f} "
                        f"conv=({convs[Technique.BASELINE]:4.0%},{convs[Technique.VISTA]:4.0%})")
        print(f"{name} pct={pct}: " + " | ".join(rows) +
              f" ({time.perf_counter()-t0:.0f}s)", flush=True)
