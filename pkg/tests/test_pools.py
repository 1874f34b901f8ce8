"""Differential pools, quota samples, variance, persistence."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vistacrypt.ciphers import DiffState, hamming_weight, simon32, simeck32
from vistacrypt.pools import (DifferentialPool, PoolFormatError, build_pool,
                              define_sample, load_pool, population_variance,
                              quota_count, sample_variance, save_pool,
                              variance_reduction)


@pytest.fixture(scope="module")
def small_pool():
    return build_pool(simon32(), rounds=4, playouts=200, initial=DiffState(1, 0),
                      seed=9)


def test_build_pool_single_record():
    pool = build_pool(simon32(), rounds=1, playouts=1, initial=DiffState(1, 0), seed=0)
    assert len(pool) == 1
    rec = pool.records[0]
    assert rec.c & ~(rec.a | rec.b) == 0
    assert rec.weight == hamming_weight(rec.a | rec.b)


def test_build_pool_deterministic():
    a = build_pool(simon32(), rounds=3, playouts=50, initial=DiffState(1, 0), seed=4)
    b = build_pool(simon32(), rounds=3, playouts=50, initial=DiffState(1, 0), seed=4)
    assert a.records == b.records and a.counts == b.counts


def test_build_pool_rejects_zero_initial():
    with pytest.raises(ValueError):
        build_pool(simon32(), rounds=1, playouts=1, initial=DiffState(0, 0), seed=0)


def test_build_pool_counts_match_records(small_pool):
    assert sum(small_pool.counts.values()) == len(small_pool.records)
    assert set(small_pool.counts) == {r.c for r in small_pool.records}


def test_playout_paths_partition_records(small_pool):
    paths = list(small_pool.playout_paths())
    assert len(paths) == 200
    assert all(len(p) == 4 for p in paths)
    flat = [c for p in paths for c in p]
    assert flat == [r.c for r in small_pool.records]


def test_quota_count_rules():
    assert quota_count(12, 5) == 1   # ceil(0.6) = 1
    assert quota_count(100, 5) == 5
    assert quota_count(1, 5) == 1
    assert quota_count(21, 5) == 2   # ceil(1.05) = 2


def test_define_sample_counts(small_pool):
    sample = define_sample(small_pool, 5)
    assert set(sample.source_counts) == set(small_pool.counts)
    for c, k in sample.source_counts.items():
        assert k == max(1, math.ceil(0.05 * small_pool.counts[c]))
    assert len(sample.values) == sum(sample.source_counts.values())


def test_define_sample_full_percent(small_pool):
    sample = define_sample(small_pool, 100)
    assert sample.source_counts == small_pool.counts


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=30),
       st.integers(min_value=1, max_value=5),
       st.floats(min_value=0.5, max_value=100),
       st.integers(min_value=0, max_value=2 ** 31))
def test_sample_support_and_length(playouts, rounds, percent, seed):
    pool = build_pool(simon32(), rounds=rounds, playouts=playouts,
                      initial=DiffState(1, 0), seed=seed)
    sample = define_sample(pool, percent)
    assert set(sample.values) == set(pool.counts)
    expected = sum(max(1, math.ceil(percent / 100 * n)) for n in pool.counts.values())
    assert len(sample.values) == expected


def test_define_sample_rejects_bad_percent(small_pool):
    for percent in (0, -1, 101):
        with pytest.raises(ValueError):
            define_sample(small_pool, percent)


def test_variance_basics():
    assert population_variance([5, 5, 5]) == 0
    assert population_variance([0, 2]) == 1
    assert sample_variance([5, 5]) == 0
    assert sample_variance([0, 2]) == 2
    # cross-checked second formula: sum(x^2)/(n-1) - n*mean^2/(n-1)
    assert sample_variance([1, 2, 3, 4]) == pytest.approx(5 / 3)
    with pytest.raises(ValueError):
        population_variance([])
    with pytest.raises(ValueError):
        sample_variance([1])


@given(st.lists(st.integers(min_value=0, max_value=0xFFFF), min_size=2, max_size=50),
       st.integers(min_value=-1000, max_value=1000))
def test_variance_translation_invariance(values, shift):
    pv = population_variance(values)
    sv = sample_variance(values)
    shifted = [v + shift for v in values]
    assert pv >= 0 and sv >= 0
    assert population_variance(shifted) == pytest.approx(pv, rel=1e-6, abs=1e-6)
    assert sample_variance(shifted) == pytest.approx(sv, rel=1e-6, abs=1e-6)


def test_variance_reduction_degenerate():
    pool = build_pool(simon32(), rounds=1, playouts=3, initial=DiffState(0, 1), seed=0)
    # zero-left starts force c=0 in round one: single-valued pool
    sample = define_sample(pool, 5)
    assert set(pool.counts) == {0}
    assert variance_reduction(pool, sample) == 0


def test_pool_roundtrip(tmp_path, small_pool):
    path = tmp_path / "pool.txt"
    save_pool(small_pool, path)
    loaded = load_pool(path)
    assert loaded.records == small_pool.records
    assert loaded.counts == small_pool.counts
    assert loaded.spec == small_pool.spec
    assert loaded.provenance == small_pool.provenance


def test_pool_roundtrip_simeck(tmp_path):
    pool = build_pool(simeck32(), rounds=2, playouts=10, initial=DiffState(1, 0), seed=3)
    path = tmp_path / "pool.txt"
    save_pool(pool, path)
    assert load_pool(path).spec == pool.spec


def test_load_pool_bad_hex(tmp_path):
    path = tmp_path / "pool.txt"
    path.write_text("#spec=simon,n=16,rounds=1,playouts=1,seed=0\nzz,00,00,0\n")
    with pytest.raises(PoolFormatError, match=":2"):
        load_pool(path)


def test_load_pool_empty_body(tmp_path):
    path = tmp_path / "pool.txt"
    path.write_text("#spec=simon,n=16,rounds=1,playouts=1,seed=0\n")
    with pytest.raises(PoolFormatError, match="empty"):
        load_pool(path)


def test_load_pool_missing_header(tmp_path):
    path = tmp_path / "pool.txt"
    path.write_text("0001,0002,0003,2\n")
    with pytest.raises(PoolFormatError, match="header"):
        load_pool(path)
