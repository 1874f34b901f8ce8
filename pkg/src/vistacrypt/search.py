"""Nested Monte-Carlo trail search over AND output differentials.

One iteration is one random playout. The engine keeps a global best
path/weight, does one playout per round level, and descends along the
incumbent best path; the outer loop repeats until the target weight is
reached or the iteration cap fires.

Round counting follows the attack convention: a segment spanning S round
boundaries crosses S-1 AND layers, so a 10-round attack walks 9
transitions and a two-way (6, 5) split walks 5 backward plus 4 forward.

Both walk directions collapse onto one update once the state is read as
(active, passive): forward uses (left, right), backward uses (right,
left). Two-way search is a single composite walk whose backward segment
runs first, resetting to the middle difference where the forward segment
begins.
"""
from __future__ import annotations

import math
import random
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from itertools import accumulate
from typing import Optional, Sequence

import numpy as np

from .ciphers import CipherSpec, DiffState, hamming_weight, rotl
from .pools import DEFAULT_PERCENT, DifferentialPool, define_sample

SENTINEL_WEIGHT = 999  # initial best weight when the maximum trail weight allows it
REJECT_ATTEMPTS = 256  # nominal retry budget before a reject draw falls back
_CACHE_SUPPORT_BITS = 12  # supports at most this wide get enumerated draw tables


class Technique(Enum):
    BASELINE = "baseline"
    VISTA = "vista"


class SearchMode(Enum):
    ONE_WAY = "one-way"
    TWO_WAY = "two-way"


class DrawPolicy(Enum):
    MASK = "mask"
    REJECT = "reject"


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class SamplingContext:
    """The multiset of candidate output differentials a search draws from.

    Immutable after construction; the reject-policy draw tables are built
    lazily per distinct support and shared across runs.
    """

    def __init__(self, technique: Technique, values: Sequence[int]):
        if not values:
            raise ValueError("sampling context is empty")
        self.technique = technique
        self.values = tuple(values)
        self._subset_counts = None  # values-within-mask counts, all 2^16 masks
        self._draw_tables: dict[int, tuple] = {}

    @classmethod
    def from_pool(cls, pool: DifferentialPool, technique: Technique,
                  percent: float = DEFAULT_PERCENT) -> "SamplingContext":
        if technique is Technique.BASELINE:
            return cls(technique, pool.c_values())
        return cls(technique, define_sample(pool, percent).values)

    def _counts_within(self, support: int) -> int:
        if self._subset_counts is None:
            counts = np.zeros(1 << 16, dtype=np.int64)
            for v in self.values:
                counts[v] += 1
            # subset-sum transform: counts[m] becomes the number of values v <= m bitwise
            for bit in range(16):
                step = 1 << bit
                counts = counts.reshape(-1, 2 * step)
                counts[:, step:] += counts[:, :step]
                counts = counts.reshape(-1)
            self._subset_counts = counts
        return int(self._subset_counts[support])

    def draw_table(self, support: int) -> tuple:
        """(hit_probability, valid_values, cumulative_counts) for one support."""
        table = self._draw_tables.get(support)
        if table is None:
            n_valid = self._counts_within(support)
            q = n_valid / len(self.values)
            p_hit = 1.0 - (1.0 - q) ** REJECT_ATTEMPTS if q else 0.0
            valid = cum = None
            if n_valid and support.bit_count() <= _CACHE_SUPPORT_BITS:
                counter = self._value_counter()
                valid, weights = [], []
                s = support
                while True:  # enumerate all subsets of the support
                    k = counter.get(s)
                    if k:
                        valid.append(s)
                        weights.append(k)
                    if s == 0:
                        break
                    s = (s - 1) & support
                cum = list(accumulate(weights))
            table = (p_hit, valid, cum)
            self._draw_tables[support] = table
        return table

    def _value_counter(self) -> dict[int, int]:
        counter = getattr(self, "_counter", None)
        if counter is None:
            counter = {}
            for v in self.values:
                counter[v] = counter.get(v, 0) + 1
            self._counter = counter
        return counter


@dataclass(frozen=True)
class SearchConfig:
    spec: CipherSpec
    rounds_to_attack: int
    target_weight: int
    max_iterations: int = 65427
    technique: Technique = Technique.BASELINE
    mode: SearchMode = SearchMode.ONE_WAY
    split: Optional[tuple[int, int]] = None
    initial: DiffState = DiffState(0x0001, 0x0000)
    seed: int = 0
    draw_policy: DrawPolicy = DrawPolicy.MASK

    def __post_init__(self):
        if self.rounds_to_attack < 1:
            raise ValueError("rounds_to_attack must be at least 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.target_weight < 0:
            raise ValueError("target_weight must be non-negative")
        self.initial.validate(self.spec)
        if self.initial.is_zero():
            raise ValueError("initial difference must be nonzero")
        if self.mode is SearchMode.TWO_WAY:
            if self.split is None:
                raise ValueError("two-way search needs a (backward, forward) split")
            back, fwd = self.split
            if back < 0 or fwd < 0 or back + fwd != self.rounds_to_attack:
                raise ValueError(f"split {self.split} does not sum to "
                                 f"{self.rounds_to_attack} rounds")
        elif self.split is not None:
            raise ValueError("split is only meaningful for two-way search")

    @property
    def transitions(self) -> int:
        """AND layers crossed: one less than the boundaries each segment spans."""
        if self.mode is SearchMode.ONE_WAY:
            return self.rounds_to_attack - 1
        return max(0, self.split[0] - 1) + max(0, self.split[1] - 1)

    def sentinel_weight(self) -> int:
        max_weight = max(self.transitions, 1) * self.spec.word_bits
        return SENTINEL_WEIGHT if max_weight < SENTINEL_WEIGHT else max_weight + 1


@dataclass(frozen=True)
class TrailResult:
    best_path: tuple[int, ...]
    best_weight: int
    iterations: int
    duration_s: float
    terminated_early: bool
    weight_timeline: tuple[tuple[int, float], ...]


def _reject_draw(ctx: SamplingContext, support: int, rng: random.Random) -> int:
    """Reject-policy draw: keep the raw value only if it already fits the
    support; with no fitting value after the retry budget, fall back to a
    uniform subset of the support."""
    if support == 0:
        return 0
    p_hit, valid, cum = ctx.draw_table(support)
    if p_hit == 0.0 or rng.random() >= p_hit:
        return rng.getrandbits(support.bit_length()) & support
    if valid is not None:
        return valid[bisect_right(cum, rng.randrange(cum[-1]))]
    values = ctx.values
    nvals = len(values)
    while True:
        draw = values[rng.randrange(nvals)]
        if draw & ~support == 0:
            return draw


def select_random(ctx: SamplingContext, a: int, b: int, rng: random.Random,
                  policy: DrawPolicy = DrawPolicy.MASK) -> int:
    """Draw one candidate differential, forced onto the support a|b."""
    support = a | b
    if policy is DrawPolicy.REJECT:
        return _reject_draw(ctx, support, rng)
    return ctx.values[rng.randrange(len(ctx.values))] & support


def random_path(start: DiffState, remaining_rounds: int, ctx: SamplingContext,
                rng: random.Random, spec: CipherSpec,
                direction: Direction = Direction.FORWARD,
                policy: DrawPolicy = DrawPolicy.MASK) -> tuple[int, list[int]]:
    """One playout: walk remaining_rounds transitions, drawing a
    differential at each AND layer."""
    if remaining_rounds < 0:
        raise ValueError("remaining_rounds must be non-negative")
    if direction is Direction.FORWARD:
        state = (start.left, start.right)
    else:
        state = (start.right, start.left)
    return _playout([(remaining_rounds, state)], ctx, rng, spec, policy)


def _playout(pieces: Sequence[tuple[int, tuple[int, int]]], ctx: SamplingContext,
             rng: random.Random, spec: CipherSpec,
             policy: DrawPolicy) -> tuple[int, list[int]]:
    """Complete a trail along the given (steps, start-state) pieces.

    The first piece continues from the caller's current state; later
    pieces restart at fresh segment states (the two-way middle reset).
    """
    n = spec.word_bits
    full = spec.mask
    r1, r2, rl = spec.and_rot_1, spec.and_rot_2, spec.lin_rot
    n1, n2, nl = n - r1, n - r2, n - rl
    values = ctx.values
    randrange = rng.randrange
    nvals = len(values)
    reject = policy is DrawPolicy.REJECT
    weight = 0
    path = []
    append = path.append
    for steps, (act, pas) in pieces:
        for _ in range(steps):
            support = (((act << r1) | (act >> n1)) | ((act << r2) | (act >> n2))) & full
            if reject:
                c = _reject_draw(ctx, support, rng)
            else:
                c = values[randrange(nvals)] & support
            weight += support.bit_count()
            append(c)
            act, pas = pas ^ c ^ (((act << rl) | (act >> nl)) & full), act
    return weight, path


@dataclass
class _RunState:
    best_path: list[int] = field(default_factory=list)
    best_weight: int = 0
    iterations: int = 0
    timeline: list[tuple[int, float]] = field(default_factory=list)


def _segments(config: SearchConfig) -> list[tuple[int, tuple[int, int]]]:
    ini = config.initial
    if config.mode is SearchMode.ONE_WAY:
        steps = config.rounds_to_attack - 1
        return [(steps, (ini.left, ini.right))] if steps else []
    back, fwd = config.split
    segs = []
    if back > 1:
        segs.append((back - 1, (ini.right, ini.left)))
    if fwd > 1:
        segs.append((fwd - 1, (ini.left, ini.right)))
    return segs


def _nested(state: _RunState, config: SearchConfig, segments, ctx: SamplingContext,
            rng: random.Random, t0: float) -> None:
    """One descent of the recursive search: a playout per level, adopting
    strictly better completions and following the best path downwards."""
    spec = config.spec
    n, full = spec.word_bits, spec.mask
    r1, r2, rl = spec.and_rot_1, spec.and_rot_2, spec.lin_rot
    n1, n2, nl = n - r1, n - r2, n - rl
    seg_idx = 0
    steps_left, (act, pas) = segments[0]
    prefix_weight = 0
    total = sum(s for s, _ in segments)
    for level in range(total):
        if state.iterations >= config.max_iterations:
            return
        pieces = [(steps_left, (act, pas))] + segments[seg_idx + 1:]
        w, path = _playout(pieces, ctx, rng, spec, config.draw_policy)
        state.iterations += 1
        candidate = prefix_weight + w
        if candidate < state.best_weight:
            state.best_weight = candidate
            state.best_path = state.best_path[:level] + path
            state.timeline.append((candidate, round(time.perf_counter() - t0, 9)))
        # one round down along the incumbent best path
        c = state.best_path[level]
        support = (((act << r1) | (act >> n1)) | ((act << r2) | (act >> n2))) & full
        prefix_weight += hamming_weight(support)
        act, pas = pas ^ c ^ (((act << rl) | (act >> nl)) & full), act
        steps_left -= 1
        if steps_left == 0:
            seg_idx += 1
            if seg_idx < len(segments):
                steps_left, (act, pas) = segments[seg_idx]


def path_weight(config: SearchConfig, path: Sequence[int]) -> int:
    """Recompute the cumulative weight of a full path under the config's walk.

    Raises if any step uses a differential outside its support.
    """
    spec = config.spec
    weight = 0
    i = 0
    for steps, (act, pas) in _segments(config):
        for _ in range(steps):
            a = rotl(act, spec.and_rot_1, spec.word_bits)
            b = rotl(act, spec.and_rot_2, spec.word_bits)
            c = path[i]
            if c & ~(a | b):
                raise ValueError(f"path step {i} uses an impossible differential")
            weight += hamming_weight(a | b)
            act, pas = pas ^ c ^ rotl(act, spec.lin_rot, spec.word_bits), act
            i += 1
    if i != len(path):
        raise ValueError(f"path length {len(path)} does not match the "
                         f"configured {i} transitions")
    return weight


def run_search(config: SearchConfig, context: SamplingContext) -> TrailResult:
    """Iterate nested descents until the target weight is reached or the
    iteration cap fires; early termination is a normal result."""
    segments = _segments(config)
    rng = random.Random(config.seed)
    state = _RunState(best_weight=config.sentinel_weight())
    t0 = time.perf_counter()
    if not segments:  # a 1-round attack crosses no AND layer
        state.best_weight = 0
        state.iterations = 1
        state.timeline.append((0, 0.0))
    while state.iterations < config.max_iterations and state.best_weight > config.target_weight:
        _nested(state, config, segments, context, rng, t0)
    duration = round(time.perf_counter() - t0, 9)
    terminated_early = (state.iterations >= config.max_iterations
                        and state.best_weight > config.target_weight)
    if path_weight(config, state.best_path) != state.best_weight:
        raise AssertionError("best path weight does not replay to best weight")
    return TrailResult(
        best_path=tuple(state.best_path),
        best_weight=state.best_weight,
        iterations=state.iterations,
        duration_s=duration,
        terminated_early=terminated_early,
        weight_timeline=tuple(state.timeline),
    )


def two_way_search(config: SearchConfig, context: SamplingContext) -> TrailResult:
    """Backward/forward search from a shared middle difference."""
    if config.mode is not SearchMode.TWO_WAY:
        raise ValueError("two_way_search requires a TWO_WAY config")
    return run_search(config, context)


def calibrate_iteration_cap(iteration_counts: Sequence[int]) -> int:
    """Early-termination cap: the upper quartile of a calibration batch."""
    if not iteration_counts:
        raise ValueError("cannot calibrate a cap from no runs")
    ordered = sorted(iteration_counts)
    # linear interpolation between closest ranks, then round up to a whole iteration
    pos = 0.75 * (len(ordered) - 1)
    lo = math.floor(pos)
    hi = math.ceil(pos)
    q3 = ordered[lo] + (ordered[hi] - ordered[lo]) * (pos - lo)
    return max(1, math.ceil(q3))
