"""CLI: subcommand wiring, flag validation, exit codes, pipeline composition."""
import pytest

from vistacrypt.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from vistacrypt.experiments import read_csv
from vistacrypt.graphs import read_edge_csv


@pytest.fixture()
def pool_file(tmp_path):
    path = tmp_path / "pool.txt"
    rc = main(["pool", "--cipher", "simon32", "--rounds", "3", "--playouts", "50",
               "--seed", "42", "--out", str(path)])
    assert rc == EXIT_OK
    return path


def test_pool_and_sample(pool_file, capsys):
    assert main(["sample", "--pool", str(pool_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "variance reduction" in out


def test_unsupported_cipher_is_usage_error(tmp_path):
    rc = main(["pool", "--cipher", "simon48", "--out", str(tmp_path / "p.txt")])
    assert rc == EXIT_USAGE


def test_bad_initial_diff_is_usage_error(tmp_path):
    rc = main(["search", "--cipher", "simon32", "--rounds", "5", "--target-weight",
               "6", "--initial-diff", "zz,00", "--out"])
    assert rc == EXIT_USAGE


def test_search_end_to_end(pool_file, capsys):
    rc = main(["search", "--cipher", "simon32", "--rounds", "6", "--target-weight",
               "10", "--technique", "vista", "--seed", "7", "--pool", str(pool_file),
               "--initial-diff", "0000,0001", "--max-iterations", "3000"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "best weight" in out and "trail:" in out


def test_search_missing_pool_file_is_runtime_error(tmp_path):
    rc = main(["search", "--cipher", "simon32", "--rounds", "5", "--target-weight",
               "6", "--pool", str(tmp_path / "nope.txt")])
    assert rc == EXIT_RUNTIME


def test_two_way_requires_split(pool_file):
    rc = main(["search", "--cipher", "simon32", "--rounds", "11", "--target-weight",
               "20", "--mode", "two-way", "--pool", str(pool_file)])
    assert rc == EXIT_USAGE


def test_experiment_analyze_pipeline(tmp_path, pool_file, capsys):
    csv_a = tmp_path / "baseline.csv"
    csv_b = tmp_path / "vista.csv"
    common = ["experiment", "--cipher", "simon32", "--rounds", "6",
              "--target-weight", "10", "--runs", "12", "--seed", "1",
              "--initial-diff", "0000,0001", "--max-iterations", "3000",
              "--pool", str(pool_file)]
    assert main(common + ["--technique", "baseline", "--out", str(csv_a)]) == EXIT_OK
    assert main(common + ["--technique", "vista", "--out", str(csv_b)]) == EXIT_OK
    records = read_csv(csv_a)
    assert len(records) == 12
    assert {r.technique for r in records} == {"baseline"}

    rc = main(["analyze", "--csv", str(csv_a), "--csv", str(csv_b),
               "--target-weight", "10", "--out", str(tmp_path / "cleaned.csv")])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "kept after cleaning" in out
    assert "median" in out
    assert "welch t-test" in out


def test_analyze_rejects_malformed_csv(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("nope\n")
    rc = main(["analyze", "--csv", str(bad), "--target-weight", "10"])
    assert rc == EXIT_RUNTIME


def test_graph_export_pool_and_sample(tmp_path, pool_file):
    out_csv = tmp_path / "g.csv"
    rc = main(["graph", "--pool", str(pool_file), "--format", "edge-csv",
               "--out", str(out_csv)])
    assert rc == EXIT_OK
    g = read_edge_csv(out_csv)
    assert g.nodes

    out_dot = tmp_path / "g.dot"
    rc = main(["graph", "--pool", str(pool_file), "--source", "sample",
               "--walk-playouts", "20", "--format", "dot", "--out", str(out_dot)])
    assert rc == EXIT_OK
    assert out_dot.read_text().startswith("digraph")


def test_graph_deterministic_output(tmp_path, pool_file):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert main(["graph", "--pool", str(pool_file), "--out", str(out)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_config_file_merging(tmp_path, pool_file, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("rounds = 6\ntarget-weight = 10\nseed = 9\n"
                    "initial-diff = 0000,0001\nmax-iterations = 2000\n")
    rc = main(["--config", str(conf), "search", "--cipher", "simon32",
               "--pool", str(pool_file), "--target-weight", "12"])
    # explicit flag wins over the config file
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "best weight" in out


def test_config_file_unknown_key(tmp_path, pool_file):
    conf = tmp_path / "run.conf"
    conf.write_text("no-such-option = 1\n")
    rc = main(["--config", str(conf), "search", "--cipher", "simon32",
               "--rounds", "5", "--target-weight", "6", "--pool", str(pool_file)])
    assert rc == EXIT_USAGE


def test_no_partial_output_on_failure(tmp_path, pool_file, monkeypatch):
    out = tmp_path / "sub" / "runs.csv"  # parent directory missing
    rc = main(["experiment", "--cipher", "simon32", "--rounds", "5",
               "--target-weight", "6", "--runs", "2", "--initial-diff", "0000,0001",
               "--max-iterations", "500", "--pool", str(pool_file),
               "--out", str(out)])
    assert rc == EXIT_RUNTIME
    assert not out.exists()
