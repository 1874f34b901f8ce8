import sys, time, statistics
sys.path.insert(0, "src")
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import build_pool, define_sample, population_variance, sample_variance
from vistacrypt.search import (SamplingContext, SearchConfig, SearchMode,
                               Technique, run_search)

def pool_variance_probe(spec, initial, label):
    pool = build_pool(spec, rounds=10, playouts=10_000, initial=initial, seed=42)
    sample = define_sample(pool, 5.0)
    pv = population_variance(pool.c_values())
    sv = sample_variance(sample.values)
    print(f"{label}: distinct={len(pool.counts)} pv={pv:.3e} sv={sv:.3e} "
          f"reduction={pv-sv:+.3e} sample={len(sample)}")
    return pool

spec = simon32()
pool_10 = pool_variance_probe(spec, DiffState(1, 0), "simon32 pool initial=(1,0)")
pool_01 = pool_variance_probe(spec, DiffState(0, 1), "simon32 pool initial=(0,1)")

def batch(ctx, tech, n, sp, transitions, target, initial, cap=65427, base_seed=1000):
    iters, weights = [], []
    t0 = time.perf_counter()
    for s in range(base_seed, base_seed + n):
        cfg = SearchConfig(spec=sp, rounds_to_attack=transitions, target_weight=target,
                           max_iterations=cap, technique=tech, seed=s, initial=initial)
        res = run_search(cfg, ctx)
        iters.append(res.iterations); weights.append(res.best_weight)
    dt = time.perf_counter() - t0
    conv = sum(1 for w in weights if w <= target) / n
    print(f"  {tech.value:9s} n={n} conv={conv:.2%} med_it={statistics.median(iters):.0f} "
          f"mean_it={statistics.fmean(iters):.0f} max_it={max(iters)} "
          f"weights={sorted(set(weights))} total={dt:.1f}s")
    return iters, weights

for pool, plabel in [(pool_10, "pool(1,0)"), (pool_01, "pool(0,1)")]:
    base_ctx = SamplingContext.from_pool(pool, Technique.BASELINE)
    vista_ctx = SamplingContext.from_pool(pool, Technique.VISTA)
    print(f"SIMON32 9 transitions from (0,1), target 30, cap 65427 [{plabel}]:")
    bi, bw = batch(base_ctx, Technique.BASELINE, 30, spec, 9, 30, DiffState(0, 1))
    vi, vw = batch(vista_ctx, Technique.VISTA, 30, spec, 9, 30, DiffState(0, 1))
    if statistics.median(bi) > 0:
        print(f"  median ratio vista/baseline: {statistics.median(vi)/statistics.median(bi):.3f}")
