"""Batch harness, sample-size math, outlier cleaning, summaries, t-test, CSV.

The harness runs seeded searches, the cleaning step mirrors the usual
experimental hygiene (drop off-target runs, then IQR-filter duration and
iteration outliers), and everything round-trips through a fixed CSV
schema.
"""
from __future__ import annotations

import csv
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import betainc

from .ciphers import DiffState
from .search import SamplingContext, SearchConfig, SearchMode, run_search

CSV_HEADER = ["experiment_id", "technique", "cipher", "rounds", "target_weight",
              "seed", "best_weight", "iterations", "duration_s", "terminated_early"]

DEFAULT_Z = 1.96  # 95% confidence


class IqrMode(Enum):
    FENCES_1_5 = "fences"
    MIDDLE_50 = "middle50"


@dataclass(frozen=True)
class ExperimentRecord:
    experiment_id: int
    technique: str
    cipher: str
    rounds: int
    target_weight: int
    seed: int
    best_weight: int
    iterations: int
    duration_s: float
    terminated_early: bool


@dataclass(frozen=True)
class SummaryStats:
    count: int
    mean: float
    std: float
    min: float
    q1: float
    median: float
    q3: float
    max: float


class TTestResult(NamedTuple):
    t: float
    p: float


def _run_one(args) -> ExperimentRecord:
    config, context, experiment_id = args
    result = run_search(config, context)
    return ExperimentRecord(
        experiment_id=experiment_id,
        technique=config.technique.value,
        cipher=config.spec.name,
        rounds=config.rounds_to_attack,
        target_weight=config.target_weight,
        seed=config.seed,
        best_weight=result.best_weight,
        iterations=result.iterations,
        duration_s=result.duration_s,
        terminated_early=result.terminated_early,
    )


def run_batch(config: SearchConfig, context: SamplingContext, n_runs: int,
              base_seed: int, jobs: int = 1) -> list[ExperimentRecord]:
    """n_runs independent searches seeded base_seed..base_seed+n_runs-1.

    Output is sorted by experiment_id, so results do not depend on worker
    scheduling.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    tasks = [(replace(config, seed=base_seed + i), context, i) for i in range(n_runs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, tasks, chunksize=max(1, n_runs // (4 * jobs))))
    else:
        records = [_run_one(t) for t in tasks]
    return sorted(records, key=lambda r: r.experiment_id)


def required_simulations(sigma: float, margin_of_error: float, z: float = DEFAULT_Z) -> int:
    """Simulation count n = (z*sigma/ME)^2 for the wanted confidence.

    Rounded to the nearest whole simulation (minimum one); the reference
    workload (z=1.96, sigma=1.80558, ME=0.2547) lands on 193.
    """
    if sigma <= 0 or margin_of_error <= 0 or z <= 0:
        raise ValueError("sigma, margin_of_error and z must all be positive")
    return max(1, round((z * sigma / margin_of_error) ** 2))


def _quartiles(values: Sequence[float]) -> tuple[float, float]:
    return (float(np.percentile(values, 25)), float(np.percentile(values, 75)))


def clean_data(records: Sequence[ExperimentRecord], target_weight: int,
               iqr_mode: IqrMode = IqrMode.FENCES_1_5) -> list[ExperimentRecord]:
    """Drop off-target runs, then IQR-filter duration and iteration outliers.

    FENCES_1_5 keeps [Q1-1.5*IQR, Q3+1.5*IQR]; MIDDLE_50 keeps [Q1, Q3].
    Both filters are computed on the on-target subset and applied jointly.
    """
    if not records:
        raise ValueError("no records to clean")
    kept = [r for r in records if r.best_weight == target_weight]
    if not kept:
        return []
    bounds = {}
    for field in ("duration_s", "iterations"):
        values = [getattr(r, field) for r in kept]
        q1, q3 = _quartiles(values)
        if iqr_mode is IqrMode.FENCES_1_5:
            iqr = q3 - q1
            bounds[field] = (q1 - 1.5 * iqr, q3 + 1.5 * iqr)
        else:
            bounds[field] = (q1, q3)
    return [r for r in kept
            if all(lo <= getattr(r, f) <= hi for f, (lo, hi) in bounds.items())]


def summarize(values: Sequence[float]) -> SummaryStats:
    """Eight-number summary; quartiles interpolate linearly between ranks,
    so they can be fractional on integer data."""
    if len(values) < 2:
        raise ValueError("summary needs at least two values")
    arr = np.asarray(values, dtype=np.float64)
    return SummaryStats(
        count=len(values),
        mean=float(arr.mean()),
        std=float(arr.std(ddof=1)),
        min=float(arr.min()),
        q1=float(np.percentile(arr, 25)),
        median=float(np.percentile(arr, 50)),
        q3=float(np.percentile(arr, 75)),
        max=float(arr.max()),
    )


def format_summary_table(columns: dict[str, SummaryStats]) -> str:
    """Aligned plain-text table, one column per labelled value set."""
    rows = ["count", "mean", "std", "min", "q1", "median", "q3", "max"]
    labels = list(columns)
    width = max(12, *(len(lbl) + 2 for lbl in labels))
    lines = ["".rjust(8) + "".join(lbl.rjust(width) for lbl in labels)]
    for row in rows:
        cells = []
        for lbl in labels:
            v = getattr(columns[lbl], row)
            cells.append((f"{v:.0f}" if row == "count" else f"{v:.4f}").rjust(width))
        lines.append(row.rjust(8) + "".join(cells))
    return "\n".join(lines)


def student_t_cdf(t: float, df: float) -> float:
    """CDF of Student's t via the regularized incomplete beta function."""
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if t == 0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * float(betainc(df / 2.0, 0.5, x))
    return 1.0 - tail if t > 0 else tail


def welch_t_test(group_a: Sequence[float], group_b: Sequence[float]) -> TTestResult:
    """Welch's unequal-variance t statistic with two-sided p-value."""
    if len(group_a) < 2 or len(group_b) < 2:
        raise ValueError("each group needs at least two values")
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    va, vb = a.var(ddof=1), b.var(ddof=1)
    na, nb = len(a), len(b)
    se2 = va / na + vb / nb
    diff = float(a.mean() - b.mean())
    if se2 == 0:
        if diff == 0:
            raise ValueError("t statistic undefined: zero variance and equal means")
        return TTestResult(math.copysign(math.inf, diff), 0.0)
    t = diff / math.sqrt(se2)
    df = se2 ** 2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    p = 2.0 * (1.0 - student_t_cdf(abs(t), df))
    return TTestResult(t, p)


class CsvFormatError(ValueError):
    """Raised when an experiment CSV does not match the schema."""


def write_csv(records: Sequence[ExperimentRecord], path) -> None:
    """Write records atomically; durations keep nanosecond resolution."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for r in records:
                writer.writerow([r.experiment_id, r.technique, r.cipher, r.rounds,
                                 r.target_weight, r.seed, r.best_weight, r.iterations,
                                 f"{r.duration_s:.9f}",
                                 "true" if r.terminated_early else "false"])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path) -> list[ExperimentRecord]:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            extra = [h for h in header if h not in CSV_HEADER]
            missing = [h for h in CSV_HEADER if h not in header]
            detail = []
            if extra:
                detail.append(f"unknown column(s) {extra}")
            if missing:
                detail.append(f"missing column(s) {missing}")
            raise CsvFormatError(f"{path}: bad header: "
                                 + ("; ".join(detail) or "columns out of order"))
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(CSV_HEADER):
                raise CsvFormatError(f"{path}:{lineno}: expected {len(CSV_HEADER)} fields")
            try:
                records.append(ExperimentRecord(
                    experiment_id=int(row[0]), technique=row[1], cipher=row[2],
                    rounds=int(row[3]), target_weight=int(row[4]), seed=int(row[5]),
                    best_weight=int(row[6]), iterations=int(row[7]),
                    duration_s=float(row[8]),
                    terminated_early={"true": True, "false": False}[row[9]],
                ))
            except (ValueError, KeyError):
                raise CsvFormatError(f"{path}:{lineno}: malformed record") from None
    return records
