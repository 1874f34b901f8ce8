"""Experiment harness, sample-size formula, cleaning, summaries, t-test, CSV."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vistacrypt.ciphers import DiffState, simon32
from vistacrypt.experiments import (CsvFormatError, ExperimentRecord, IqrMode,
                                    clean_data, format_summary_table, read_csv,
                                    required_simulations, run_batch,
                                    student_t_cdf, summarize, welch_t_test,
                                    write_csv)
from vistacrypt.pools import build_pool
from vistacrypt.search import SamplingContext, SearchConfig, Technique, run_search


@pytest.fixture(scope="module")
def ctx():
    pool = build_pool(simon32(), rounds=3, playouts=100, initial=DiffState(1, 0), seed=8)
    return SamplingContext.from_pool(pool, Technique.BASELINE)


@pytest.fixture(scope="module")
def config():
    return SearchConfig(spec=simon32(), rounds_to_attack=5, target_weight=6,
                        max_iterations=300, initial=DiffState(0, 1), seed=0)


def _record(i, **kw):
    base = dict(experiment_id=i, technique="baseline", cipher="simon32", rounds=10,
                target_weight=30, seed=i, best_weight=30, iterations=100 + i,
                duration_s=1.0 + i / 1000, terminated_early=False)
    base.update(kw)
    return ExperimentRecord(**base)


def test_run_batch_single_matches_run_search(config, ctx):
    records = run_batch(config, ctx, n_runs=1, base_seed=5)
    from dataclasses import replace
    direct = run_search(replace(config, seed=5), ctx)
    r = records[0]
    assert (r.best_weight, r.iterations, r.terminated_early) == \
           (direct.best_weight, direct.iterations, direct.terminated_early)


def test_run_batch_deterministic_except_duration(config, ctx):
    a = run_batch(config, ctx, n_runs=6, base_seed=1)
    b = run_batch(config, ctx, n_runs=6, base_seed=1)
    strip = lambda r: (r.experiment_id, r.technique, r.cipher, r.rounds,
                       r.target_weight, r.seed, r.best_weight, r.iterations,
                       r.terminated_early)
    assert [strip(r) for r in a] == [strip(r) for r in b]
    assert [r.seed for r in a] == [1, 2, 3, 4, 5, 6]


def test_run_batch_parallel_matches_sequential(config, ctx):
    seq = run_batch(config, ctx, n_runs=4, base_seed=0, jobs=1)
    par = run_batch(config, ctx, n_runs=4, base_seed=0, jobs=2)
    assert [r.best_weight for r in seq] == [r.best_weight for r in par]
    assert [r.iterations for r in seq] == [r.iterations for r in par]


def test_required_simulations():
    assert required_simulations(1.0, 1.0, z=1.0) == 1
    assert required_simulations(3.0, 1.0, z=2.0) == 36
    assert required_simulations(1.80558, 0.2547, z=1.96) == 193
    with pytest.raises(ValueError):
        required_simulations(0, 1, 1)


@given(st.floats(min_value=0.1, max_value=50), st.floats(min_value=0.1, max_value=50),
       st.floats(min_value=0.1, max_value=5))
def test_required_simulations_monotone(sigma, me, z):
    n = required_simulations(sigma, me, z)
    assert required_simulations(sigma * 1.5, me, z) >= n
    assert required_simulations(sigma, me, z * 1.5) >= n
    assert required_simulations(sigma, me * 1.5, z) <= n


def test_clean_data_weight_filter():
    records = [_record(i) for i in range(10)] + [_record(99, best_weight=31)]
    kept = clean_data(records, 30, IqrMode.FENCES_1_5)
    assert all(r.best_weight == 30 for r in kept)
    assert len(kept) == 10


def test_clean_data_fences_removes_planted_outlier():
    records = [_record(i, iterations=i + 1, duration_s=1.0) for i in range(100)]
    outlier = _record(100, iterations=10 ** 6, duration_s=1.0)
    kept = clean_data(records + [outlier], 30, IqrMode.FENCES_1_5)
    assert outlier not in kept
    assert set(kept) == set(records)


def test_clean_data_middle50():
    records = [_record(i, iterations=i + 1, duration_s=1.0) for i in range(100)]
    kept = clean_data(records, 30, IqrMode.MIDDLE_50)
    iters = sorted(r.iterations for r in kept)
    q1, q3 = np.percentile(range(1, 101), [25, 75])
    assert iters[0] >= q1 and iters[-1] <= q3


def test_clean_data_idempotent_on_clean_set():
    records = [_record(i, iterations=i + 1, duration_s=1.0) for i in range(100)]
    once = clean_data(records, 30, IqrMode.FENCES_1_5)
    twice = clean_data(once, 30, IqrMode.FENCES_1_5)
    assert twice == once


def test_clean_data_empty_result_is_not_error():
    records = [_record(0, best_weight=99)]
    assert clean_data(records, 30) == []


def test_summarize_hand_computed():
    s = summarize([1, 2, 3, 4])
    assert s.median == 2.5 and s.q1 == 1.75 and s.q3 == 3.25
    assert s.mean == 2.5
    assert s.std == pytest.approx(math.sqrt(5 / 3))
    const = summarize([7, 7, 7])
    assert const.std == 0 and const.min == const.max == 7


def test_summarize_fractional_quartile_on_integers():
    # linear interpolation can land off the integer grid
    s = summarize([1, 2, 3, 4, 5, 6])
    assert s.q3 == 4.75 and s.q1 == 2.25


@given(st.lists(st.integers(min_value=-10 ** 6, max_value=10 ** 6), min_size=2,
                max_size=40),
       st.randoms(use_true_random=False))
def test_summarize_permutation_invariant(values, rnd):
    shuffled = values[:]
    rnd.shuffle(shuffled)
    a, b = summarize(values), summarize(shuffled)
    assert (a.count, a.min, a.q1, a.median, a.q3, a.max) == \
           (b.count, b.min, b.q1, b.median, b.q3, b.max)
    assert a.mean == pytest.approx(b.mean, rel=1e-12, abs=1e-12)
    assert a.std == pytest.approx(b.std, rel=1e-9, abs=1e-12)


def test_format_summary_table_alignment():
    table = format_summary_table({"a": summarize([1, 2, 3]), "b": summarize([4, 5, 6])})
    lines = table.splitlines()
    assert len(lines) == 9
    assert all(len(line) == len(lines[0]) for line in lines[1:])


def test_student_t_cdf_symmetry():
    for df in (1, 5, 30.5):
        assert student_t_cdf(0, df) == 0.5
        assert student_t_cdf(1.7, df) + student_t_cdf(-1.7, df) == pytest.approx(1.0)


def test_welch_identical_groups():
    t, p = welch_t_test([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert t == 0 and p == pytest.approx(1.0)


def test_welch_separated_groups():
    a = [0.0, 0.001, -0.001, 0.0005]
    b = [1.0, 1.001, 0.999, 1.0005]
    t, p = welch_t_test(a, b)
    assert p < 0.01 and t < 0


def test_welch_antisymmetric():
    a, b = [1.0, 2.0, 4.0], [2.0, 5.0, 9.0]
    ra, rb = welch_t_test(a, b), welch_t_test(b, a)
    assert ra.t == pytest.approx(-rb.t)
    assert ra.p == pytest.approx(rb.p)


def test_welch_matches_scipy():
    from scipy.stats import ttest_ind
    a = [12.1, 14.3, 11.8, 15.2, 13.3]
    b = [10.0, 10.5, 9.6, 11.2]
    mine = welch_t_test(a, b)
    ref = ttest_ind(a, b, equal_var=False)
    assert mine.t == pytest.approx(ref.statistic)
    assert mine.p == pytest.approx(ref.pvalue)


def test_welch_zero_variance_equal_means_is_error():
    with pytest.raises(ValueError):
        welch_t_test([1.0, 1.0], [1.0, 1.0])


def test_welch_zero_variance_distinct_means():
    t, p = welch_t_test([1.0, 1.0], [2.0, 2.0])
    assert t == -math.inf and p == 0.0


def test_csv_roundtrip(tmp_path, config, ctx):
    records = run_batch(config, ctx, n_runs=5, base_seed=0)
    path = tmp_path / "runs.csv"
    write_csv(records, path)
    assert read_csv(path) == records


def test_csv_header_exact(tmp_path):
    path = tmp_path / "runs.csv"
    write_csv([], path)
    header = path.read_text().splitlines()[0]
    assert header == ("experiment_id,technique,cipher,rounds,target_weight,"
                      "seed,best_weight,iterations,duration_s,terminated_early")
    assert read_csv(path) == []


def test_csv_rejects_unknown_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("experiment_id,technique,cipher,rounds,target_weight,"
                    "seed,best_weight,iterations,duration_s,terminated_early,extra\n")
    with pytest.raises(CsvFormatError, match="extra"):
        read_csv(path)


def test_csv_rejects_reordered_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("technique,experiment_id,cipher,rounds,target_weight,"
                    "seed,best_weight,iterations,duration_s,terminated_early\n")
    with pytest.raises(CsvFormatError):
        read_csv(path)


def test_csv_duration_precision(tmp_path):
    rec = _record(0, duration_s=0.123456789)
    path = tmp_path / "runs.csv"
    write_csv([rec], path)
    cell = path.read_text().splitlines()[1].split(",")[8]
    assert len(cell.split(".")[1]) >= 6
    assert read_csv(path)[0].duration_s == rec.duration_s
