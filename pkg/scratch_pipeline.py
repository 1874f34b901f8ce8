"""Full criterion-6/7 pipeline on the spec-literal configuration."""
import sys, time, statistics
sys.path.insert(0, "src")
import numpy as np
from vistacrypt.ciphers import simon32, simeck32, DiffState
from vistacrypt.pools import build_pool, define_sample
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               Technique, run_search)

def quartiles(xs):
    return np.percentile(xs, 25), np.percentile(xs, 75)

def clean(rows, target):
    rows = [r for r in rows if r["weight"] == target]
    if not rows:
        return rows
    out = rows
    for key in ("dur", "iters"):
        vals = [r[key] for r in out]
        q1, q3 = quartiles(vals)
        iqr = q3 - q1
        lo, hi = q1 - 1.5 * iqr, q3 + 1.5 * iqr
        out = [r for r in out if lo <= r[key] <= hi]
    return out

def arm(spec, ctx, tech, initial, transitions, target, n=193, cap=65427, base_seed=1):
    rows = []
    for s in range(base_seed, base_seed + n):
        cfg = SearchConfig(spec=spec, rounds_to_attack=transitions, target_weight=target,
                           max_iterations=cap, technique=tech, seed=s,
                           initial=DiffState(*initial))
        r = run_search(cfg, ctx)
        rows.append({"weight": r.best_weight, "iters": r.iterations, "dur": r.duration_s})
    conv = sum(1 for r in rows if r["weight"] <= target) / n
    exact = sum(1 for r in rows if r["weight"] == target)
    kept = clean(rows, target)
    med = statistics.median(r["iters"] for r in kept) if kept else float("nan")
    return conv, exact, len(kept), med

for name, spec, initial, transitions, target in [
        ("SIMON32", simon32(), (0, 1), 9, 30),
        ("SIMECK32", simeck32(), (0, 1), 10, 28)]:
    pool = build_pool(spec, rounds=10, playouts=10_000, initial=DiffState(1, 0), seed=42)
    sample = define_sample(pool, 5.0)
    bctx = SamplingContext(Technique.BASELINE, tuple(pool.c_values()))
    vctx = SamplingContext(Technique.VISTA, tuple(sample.values))
    t0 = time.perf_counter()
    bconv, bexact, bkept, bmed = arm(spec, bctx, Technique.BASELINE, initial, transitions, target)
    vconv, vexact, vkept, vmed = arm(spec, vctx, Technique.VISTA, initial, transitions, target)
    print(f"{name}: base conv={bconv:.1%} exact={bexact} kept={bkept} med={bmed:.0f} | "
          f"vista conv={vconv:.1%} exact={vexact} kept={vkept} med={vmed:.0f} | "
          f"cleaned ratio={vmed/bmed:.3f} | {time.perf_counter()-t0:.0f}s")
