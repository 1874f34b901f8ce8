"""Full 193-run protocol validation for criteria 5/6/7."""
import sys, time, statistics
sys.path.insert(0, "src")
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import build_pool
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               Technique, run_search)
from vistacrypt.experiments import IqrMode, clean_data, run_batch

def protocol(tag, spec, pool, initial, rounds, target, policy, n=193, cap=65427,
             base_seed=1):
    print(f"{tag}:", flush=True)
    meds = {}
    for tech in Technique:
        ctx = SamplingContext.from_pool(pool, tech)
        cfg = SearchConfig(spec=spec, rounds_to_attack=rounds, target_weight=target,
                           max_iterations=cap, technique=tech, seed=0,
                           initial=DiffState(*initial), draw_policy=policy)
        t0 = time.perf_counter()
        records = run_batch(cfg, ctx, n_runs=n, base_seed=base_seed)
        dt = time.perf_counter() - t0
        conv = sum(1 for r in records if r.best_weight <= target) / n
        kept = clean_data(records, target, IqrMode.FENCES_1_5)
        med = statistics.median(r.iterations for r in kept) if kept else float("nan")
        raw_med = statistics.median(r.iterations for r in records)
        meds[tech] = med
        first50 = records[:50]
        c5 = sum(1 for r in first50 if r.best_weight <= target) / len(first50)
        print(f"  {tech.value:9s} conv={conv:6.1%} first50={c5:6.1%} kept={len(kept):3d} "
              f"cleaned_med={med:8.1f} raw_med={raw_med:8.1f} ({dt:.0f}s)", flush=True)
    ratio = meds[Technique.VISTA] / meds[Technique.BASELINE]
    print(f"  cleaned median ratio vista/baseline = {ratio:.3f}", flush=True)

simon, simeck = simon32(), simeck32()

spool3 = build_pool(simon, 3, 10000, DiffState(1, 0), 42)
protocol("SIMON32 pr=3 pool, (0,1) 10r t30 REJECT", simon, spool3, (0, 1), 10, 30,
         DrawPolicy.REJECT)

kpool3 = build_pool(simeck, 3, 10000, DiffState(1, 0), 42)
protocol("SIMECK32 pr=3 pool, (1,0) 11r t28 REJECT", simeck, kpool3, (1, 0), 11, 28,
         DrawPolicy.REJECT)

kpool10 = build_pool(simeck, 10, 10000, DiffState(1, 0), 42)
protocol("SIMECK32 pr=10 pool, (1,0) 11r t28 REJECT", simeck, kpool10, (1, 0), 11, 28,
         DrawPolicy.REJECT)
