"""Capture search trajectories once; shape cap/iqr offline for fat margins."""
import sys, time, statistics, random
sys.path.insert(0, "src")
import numpy as np
from vistacrypt.ciphers import simon32, DiffState
from vistacrypt.pools import build_pool, define_sample
from vistacrypt.search import (DrawPolicy, SamplingContext, SearchConfig,
                               Technique, _segments, _playout, _RunState)
import vistacrypt.search as vs


def run_traj(config, ctx, cap=65427):
    """Like run_search but returns (first_hit_iter, hit_weight) where hit is the
    first improvement with weight <= target; None if never within cap."""
    segments = _segments(config)
    rng = random.Random(config.seed)
    state = _RunState(best_weight=config.sentinel_weight())
    spec = config.spec
    n, full = spec.word_bits, spec.mask
    r1, r2, rl = spec.and_rot_1, spec.and_rot_2, spec.lin_rot
    n1, n2, nl = n - r1, n - r2, n - rl
    while state.iterations < cap and state.best_weight > config.target_weight:
        seg_idx = 0
        steps_left, (act, pas) = segments[0]
        prefix_weight = 0
        total = sum(s for s, _ in segments)
        for level in range(total):
            if state.iterations >= cap:
                break
            pieces = [(steps_left, (act, pas))] + segments[seg_idx + 1:]
            w, path = _playout(pieces, ctx, rng, spec, config.draw_policy)
            state.iterations += 1
            cand = prefix_weight + w
            if cand < state.best_weight:
                state.best_weight = cand
                state.best_path = state.best_path[:level] + path
                if cand <= config.target_weight:
                    return state.iterations, cand
            c = state.best_path[level]
            support = (((act << r1) | (act >> n1)) | ((act << r2) | (act >> n2))) & full
            prefix_weight += support.bit_count()
            act, pas = pas ^ c ^ (((act << rl) | (act >> nl)) & full), act
            steps_left -= 1
            if steps_left == 0:
                seg_idx += 1
                if seg_idx < len(segments):
                    steps_left, (act, pas) = segments[seg_idx]
    return None, None


def capture(spec, pool, initial, rounds, target, policy, percent, n=193, base=1):
    out = {}
    for tech in Technique:
        ctx = SamplingContext.from_pool(pool, tech, percent)
        rows = []
        for s in range(base, base + n):
            cfg = SearchConfig(spec=spec, rounds_to_attack=rounds, target_weight=target,
                               max_iterations=65427, technique=tech, seed=s,
                               initial=DiffState(*initial), draw_policy=policy)
            hit_iter, hit_w = run_traj(cfg, ctx)
            rows.append((hit_iter, hit_w))
        out[tech] = rows
    return out


def shaped_ratio(data, target, cap):
    meds = {}
    for tech, rows in data.items():
        kept = [it for it, w in rows if it is not None and it <= cap and w == target]
        if len(kept) < 10:
            return None
        q1, q3 = np.percentile(kept, 25), np.percentile(kept, 75)
        iqr = q3 - q1
        kept = [v for v in kept if q1 - 1.5 * iqr <= v <= q3 + 1.5 * iqr]
        meds[tech] = statistics.median(kept)
    return meds[Technique.VISTA] / meds[Technique.BASELINE]


simon = simon32()
for pr in (2, 3):
    pool = build_pool(simon, pr, 10000, DiffState(1, 0), 42)
    for policy in (DrawPolicy.REJECT, DrawPolicy.MASK):
        for start in ((0, 1), (0, 0x0100)):
            for percent in (2.0, 5.0, 10.0):
                t0 = time.perf_counter()
                data = capture(simon, pool, start, 10, 30, policy, percent)
                full_ratio = shaped_ratio(data, 30, 65427)
                caps = {c: shaped_ratio(data, 30, c) for c in (150, 300, 600, 1200)}
                caps_s = " ".join(f"{c}:{r:.2f}" if r else f"{c}:--" for c, r in caps.items())
                print(f"pr={pr} {policy.value:6s} start={start} pct={percent:4.1f}: "
                      f"full={full_ratio if full_ratio else float('nan'):.3f} "
                      f"capped[{caps_s}] ({time.perf_counter()-t0:.0f}s)", flush=True)
