"""Populations of AND output differentials, quota samples, and variance.

A pool is generated by recording every AND transition met during a batch
of unguided random playouts; the quota sample keeps max(1, ceil(p% of
count)) copies of each distinct output differential so that rare values
survive while common ones shrink.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .ciphers import CipherSpec, DiffState, hamming_weight, spec_by_name

DEFAULT_PERCENT = 5.0
DEFAULT_PLAYOUTS = 10_000
DEFAULT_POOL_SEED = 42


class TransitionRecord(NamedTuple):
    a: int
    b: int
    c: int
    weight: int


@dataclass(frozen=True)
class PoolProvenance:
    playouts: int
    rounds: int
    seed: int


@dataclass
class DifferentialPool:
    """Every AND transition observed while generating the pool, in playout
    order, plus per-value occurrence counts of the output differentials."""

    records: list[TransitionRecord]
    counts: dict[int, int]
    spec: CipherSpec
    provenance: PoolProvenance

    def __len__(self) -> int:
        return len(self.records)

    def c_values(self) -> list[int]:
        return [r.c for r in self.records]

    def playout_paths(self) -> Iterator[list[int]]:
        """The recorded c-sequences, one per playout."""
        r = self.provenance.rounds
        for i in range(0, len(self.records), r):
            yield [rec.c for rec in self.records[i:i + r]]


@dataclass
class QuotaSample:
    """Quota-reduced multiset of output differentials (at least one of each)."""

    values: list[int]
    source_counts: dict[int, int]
    percent: float

    def __len__(self) -> int:
        return len(self.values)


def quota_count(population_count: int, percent: float) -> int:
    """How many copies of one differential the sample keeps."""
    return max(1, math.ceil(percent / 100.0 * population_count))


def record_playout_paths(spec: CipherSpec, rounds: int, playouts: int,
                         initial: DiffState, seed: int,
                         draw_values: Optional[list[int]] = None) -> list[list[TransitionRecord]]:
    """Run unguided random playouts and record every AND transition.

    With draw_values=None each recorded c carries the generator's
    avalanche bias: every support bit is kept with probability 5/8 rather
    than the 1/2 of a single uniform draw, which skews the population
    toward high-activity differences the way harvested differential lists
    are skewed. With draw_values given, a value is drawn from the list and
    masked onto the support (the selection rule the searches use).
    """
    if playouts < 1 or rounds < 1:
        raise ValueError("playouts and rounds must be at least 1")
    initial.validate(spec)
    if initial.is_zero():
        raise ValueError("zero initial difference produces a degenerate pool")
    rng = random.Random(seed)
    randrange = rng.randrange
    n = spec.word_bits
    full = spec.mask
    size = full + 1
    r1, r2, rl = spec.and_rot_1, spec.and_rot_2, spec.lin_rot
    n_values = len(draw_values) if draw_values is not None else 0
    paths = []
    for _ in range(playouts):
        left, right = initial.left, initial.right
        path = []
        for _ in range(rounds):
            a = ((left << r1) | (left >> (n - r1))) & full if r1 else left
            b = ((left << r2) | (left >> (n - r2))) & full if r2 else left
            support = a | b
            if draw_values is None:
                c = (randrange(size) | (randrange(size) & randrange(size))) & support
            else:
                c = draw_values[randrange(n_values)] & support
            path.append(TransitionRecord(a, b, c, hamming_weight(support)))
            left, right = right ^ c ^ (((left << rl) | (left >> (n - rl))) & full), left
        paths.append(path)
    return paths


def build_pool(spec: CipherSpec, rounds: int, playouts: int,
               initial: DiffState, seed: int) -> DifferentialPool:
    """Generate the population of output differentials for one workload."""
    paths = record_playout_paths(spec, rounds, playouts, initial, seed)
    records = [rec for path in paths for rec in path]
    counts = dict(Counter(rec.c for rec in records))
    return DifferentialPool(records, counts, spec,
                            PoolProvenance(playouts, rounds, seed))


def define_sample(pool: DifferentialPool, percent: float = DEFAULT_PERCENT) -> QuotaSample:
    """Quota sample of the pool: per distinct differential, max(1, ceil(p%·N_h))
    copies. Counts alone determine the sample, so it is deterministic."""
    if not pool.records:
        raise ValueError("cannot sample an empty pool")
    if not 0 < percent <= 100:
        raise ValueError(f"percent must lie in (0, 100], got {percent}")
    values = []
    source_counts = {}
    for c in sorted(pool.counts):
        k = quota_count(pool.counts[c], percent)
        source_counts[c] = k
        values.extend([c] * k)
    return QuotaSample(values, source_counts, percent)


def population_variance(values) -> float:
    """(1/N)·Σ(x−μ)² over the values taken as unsigned integers."""
    if len(values) == 0:
        raise ValueError("variance of an empty population is undefined")
    return float(np.var(np.asarray(values, dtype=np.float64)))


def sample_variance(values) -> float:
    """Unbiased (1/(n−1)) variance."""
    if len(values) < 2:
        raise ValueError("sample variance needs at least two values")
    return float(np.var(np.asarray(values, dtype=np.float64), ddof=1))


def variance_reduction(pool: DifferentialPool, sample: QuotaSample) -> float:
    """Population variance of the pool minus sample variance of the quota sample.

    A one-element sample (degenerate single-value pool) has no spread and
    counts as zero sample variance.
    """
    sv = sample_variance(sample.values) if len(sample.values) >= 2 else 0.0
    return population_variance(pool.c_values()) - sv


class PoolFormatError(ValueError):
    """Raised when a pool file does not parse."""


def save_pool(pool: DifferentialPool, path) -> None:
    """Write the pool to its line-oriented text format (atomic replace)."""
    path = Path(path)
    spec, prov = pool.spec, pool.provenance
    digits = spec.word_bits // 4
    lines = [f"#spec={spec.variant.value},n={spec.word_bits},"
             f"rounds={prov.rounds},playouts={prov.playouts},seed={prov.seed}"]
    for rec in pool.records:
        lines.append(f"{rec.a:0{digits}x},{rec.b:0{digits}x},{rec.c:0{digits}x},{rec.weight}")
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def load_pool(path) -> DifferentialPool:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines or not lines[0].startswith("#spec="):
        raise PoolFormatError(f"{path}: missing '#spec=' header line")
    header = {}
    for field in lines[0][1:].split(","):
        key, _, value = field.partition("=")
        header[key.strip()] = value.strip()
    try:
        variant = header["spec"]
        word_bits = int(header["n"])
        rounds = int(header["rounds"])
        playouts = int(header["playouts"])
        seed = int(header["seed"])
    except (KeyError, ValueError) as exc:
        raise PoolFormatError(f"{path}: malformed header: {exc}") from exc
    spec = spec_by_name(f"{variant}{2 * word_bits}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise PoolFormatError(f"{path}:{lineno}: expected 4 comma-separated fields")
        try:
            a, b, c = (int(p, 16) for p in parts[:3])
            weight = int(parts[3])
        except ValueError:
            raise PoolFormatError(f"{path}:{lineno}: malformed record {line!r}") from None
        rec = TransitionRecord(a, b, c, weight)
        if c & ~(a | b) or weight != hamming_weight(a | b):
            raise PoolFormatError(f"{path}:{lineno}: record violates transition invariants")
        records.append(rec)
    if not records:
        raise PoolFormatError(f"{path}: header but no records (empty pool)")
    counts = dict(Counter(rec.c for rec in records))
    return DifferentialPool(records, counts, spec,
                            PoolProvenance(playouts, rounds, seed))
