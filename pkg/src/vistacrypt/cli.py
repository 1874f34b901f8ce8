"""Command-line entry point: pool generation, sampling, searches, experiment
batches, analysis, and graph export."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import graphs
from .ciphers import DiffState, spec_by_name
from .experiments import (IqrMode, clean_data, format_summary_table, read_csv,
                          run_batch, summarize, welch_t_test, write_csv)
from .pools import (DEFAULT_PERCENT, DEFAULT_PLAYOUTS, DEFAULT_POOL_SEED,
                    build_pool, define_sample, load_pool, population_variance,
                    record_playout_paths, sample_variance, save_pool)
from .search import (DrawPolicy, SamplingContext, SearchConfig, SearchMode,
                     Technique, run_search)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_initial(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--initial-diff expects HEX,HEX, got {text!r}")
    try:
        left, right = (int(p, 16) for p in parts)
    except ValueError:
        raise UsageError(f"--initial-diff expects hex words, got {text!r}") from None
    return left, right


def _parse_split(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--split expects B,F round counts, got {text!r}")
    try:
        back, fwd = (int(p) for p in parts)
    except ValueError:
        raise UsageError(f"--split expects integers, got {text!r}") from None
    return back, fwd


def _load_config_file(path: str) -> dict[str, str]:
    entries = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _merge_config_file(args: argparse.Namespace, parser_defaults: dict) -> None:
    """Precedence: explicit flag > config file > default."""
    if not getattr(args, "config", None):
        return
    entries = _load_config_file(args.config)
    for key, value in entries.items():
        if not hasattr(args, key):
            raise UsageError(f"config file sets unknown option {key!r}")
        if getattr(args, key) is None or getattr(args, key) == parser_defaults.get(key):
            setattr(args, key, value)


_COMMON_DEFAULTS = {
    "cipher": "simon32",
    "rounds": 10,
    "seed": 0,
    "percent": DEFAULT_PERCENT,
    "playouts": DEFAULT_PLAYOUTS,
    "pool_seed": DEFAULT_POOL_SEED,
    "initial_diff": "0001,0000",
    "technique": "baseline",
    "draw_policy": "mask",
    "mode": "one-way",
    "max_iterations": 65427,
}


def _add_pool_source_flags(sub):
    sub.add_argument("--pool", help="existing pool file to load")
    sub.add_argument("--playouts", type=int, default=_COMMON_DEFAULTS["playouts"],
                     help="playouts when building a pool in-process")
    sub.add_argument("--pool-seed", type=int, default=_COMMON_DEFAULTS["pool_seed"])
    sub.add_argument("--pool-rounds", type=int, default=None,
                     help="pool playout length (defaults to --rounds)")
    sub.add_argument("--pool-initial", default=_COMMON_DEFAULTS["initial_diff"],
                     help="pool initial difference HEX,HEX")


def _add_search_flags(sub):
    sub.add_argument("--cipher", choices=["simon32", "simeck32"],
                     default=_COMMON_DEFAULTS["cipher"])
    sub.add_argument("--rounds", type=int, default=_COMMON_DEFAULTS["rounds"])
    sub.add_argument("--target-weight", type=int, required=True)
    sub.add_argument("--technique", choices=["baseline", "vista"],
                     default=_COMMON_DEFAULTS["technique"])
    sub.add_argument("--mode", choices=["one-way", "two-way"],
                     default=_COMMON_DEFAULTS["mode"])
    sub.add_argument("--split", default=None, help="B,F rounds for two-way")
    sub.add_argument("--initial-diff", default=_COMMON_DEFAULTS["initial_diff"])
    sub.add_argument("--max-iterations", type=int,
                     default=_COMMON_DEFAULTS["max_iterations"])
    sub.add_argument("--percent", type=float, default=_COMMON_DEFAULTS["percent"])
    sub.add_argument("--seed", type=int, default=_COMMON_DEFAULTS["seed"])
    sub.add_argument("--draw-policy", choices=["mask", "reject"],
                     default=_COMMON_DEFAULTS["draw_policy"])
    _add_pool_source_flags(sub)


def build_parser() -> _Parser:
    parser = _Parser(prog="vistacrypt",
                     description="Differential trail search for SIMON32/SIMECK32 "
                                 "with quota-sampled nested Monte-Carlo search.")
    parser.add_argument("--config", help="key = value config file; explicit flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pool", help="build and persist a differential pool")
    p.add_argument("--cipher", choices=["simon32", "simeck32"],
                   default=_COMMON_DEFAULTS["cipher"])
    p.add_argument("--rounds", type=int, default=_COMMON_DEFAULTS["rounds"])
    p.add_argument("--playouts", type=int, default=_COMMON_DEFAULTS["playouts"])
    p.add_argument("--seed", type=int, default=_COMMON_DEFAULTS["pool_seed"])
    p.add_argument("--initial-diff", default=_COMMON_DEFAULTS["initial_diff"])
    p.add_argument("--out", required=True)

    s = sub.add_parser("sample", help="quota sample a pool and report variances")
    s.add_argument("--pool", required=True)
    s.add_argument("--percent", type=float, default=_COMMON_DEFAULTS["percent"])

    se = sub.add_parser("search", help="one seeded trail search")
    _add_search_flags(se)

    ex = sub.add_parser("experiment", help="seeded batch of searches, CSV out")
    _add_search_flags(ex)
    ex.add_argument("--runs", type=int, required=True)
    ex.add_argument("--jobs", type=int, default=1)
    ex.add_argument("--out", required=True)

    an = sub.add_parser("analyze", help="clean, summarize and compare CSVs")
    an.add_argument("--csv", action="append", required=True,
                    help="experiment CSV (repeat for comparison)")
    an.add_argument("--target-weight", type=int, required=True)
    an.add_argument("--iqr", choices=["fences", "middle50"], default="fences")
    an.add_argument("--out", default=None, help="optional cleaned-summary CSV")

    g = sub.add_parser("graph", help="build a transition graph and export it")
    g.add_argument("--pool", required=True)
    g.add_argument("--source", choices=["pool", "sample"], default="pool",
                   help="pool playout paths, or fresh sample-drawn walk paths")
    g.add_argument("--percent", type=float, default=_COMMON_DEFAULTS["percent"])
    g.add_argument("--walk-playouts", type=int, default=None,
                   help="sample-walk playout count (defaults to the pool's)")
    g.add_argument("--seed", type=int, default=_COMMON_DEFAULTS["seed"])
    g.add_argument("--format", choices=["dot", "edge-csv"], default="edge-csv")
    g.add_argument("--out", required=True)
    return parser


def _resolve_pool(args):
    if getattr(args, "pool", None):
        return load_pool(args.pool)
    spec = spec_by_name(args.cipher)
    left, right = _parse_initial(args.pool_initial)
    rounds = args.pool_rounds if args.pool_rounds is not None else args.rounds
    return build_pool(spec, rounds=rounds, playouts=args.playouts,
                      initial=DiffState(left, right), seed=args.pool_seed)


def _search_config(args) -> SearchConfig:
    spec = spec_by_name(args.cipher)
    left, right = _parse_initial(args.initial_diff)
    mode = SearchMode(args.mode)
    split = _parse_split(args.split) if args.split else None
    if mode is SearchMode.TWO_WAY and split is None:
        raise UsageError("--mode two-way requires --split B,F")
    try:
        return SearchConfig(
            spec=spec,
            rounds_to_attack=args.rounds,
            target_weight=args.target_weight,
            max_iterations=args.max_iterations,
            technique=Technique(args.technique),
            mode=mode,
            split=split,
            initial=DiffState(left, right),
            seed=args.seed,
            draw_policy=DrawPolicy(args.draw_policy),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_pool(args) -> int:
    spec = spec_by_name(args.cipher)
    left, right = _parse_initial(args.initial_diff)
    pool = build_pool(spec, rounds=args.rounds, playouts=args.playouts,
                      initial=DiffState(left, right), seed=args.seed)
    save_pool(pool, args.out)
    print(f"pool: {len(pool)} transitions, {len(pool.counts)} distinct "
          f"output differentials -> {args.out}")
    return EXIT_OK


def _cmd_sample(args) -> int:
    pool = load_pool(args.pool)
    sample = define_sample(pool, args.percent)
    pv = population_variance(pool.c_values())
    sv = sample_variance(sample.values)
    print(f"population: {len(pool)} values, variance {pv:.2f}")
    print(f"sample ({args.percent:g}%): {len(sample)} values, variance {sv:.2f}")
    print(f"variance reduction: {pv - sv:.2f}")
    return EXIT_OK


def _cmd_search(args) -> int:
    config = _search_config(args)
    pool = _resolve_pool(args)
    context = SamplingContext.from_pool(pool, config.technique, args.percent)
    result = run_search(config, context)
    status = "terminated early" if result.terminated_early else "reached target" \
        if result.best_weight <= config.target_weight else "stopped"
    print(f"best weight {result.best_weight} after {result.iterations} iterations "
          f"({result.duration_s:.3f}s, {status})")
    print("trail:", " ".join(f"{c:04x}" for c in result.best_path))
    print("improvements (weight @ seconds):")
    for weight, elapsed in result.weight_timeline:
        print(f"  {weight:4d} @ {elapsed:.6f}")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    config = _search_config(args)
    pool = _resolve_pool(args)
    context = SamplingContext.from_pool(pool, config.technique, args.percent)
    records = run_batch(config, context, n_runs=args.runs, base_seed=args.seed,
                        jobs=args.jobs)
    write_csv(records, args.out)
    reached = sum(1 for r in records if r.best_weight <= config.target_weight)
    print(f"{len(records)} runs -> {args.out} ({reached} reached the target)")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    iqr_mode = IqrMode.FENCES_1_5 if args.iqr == "fences" else IqrMode.MIDDLE_50
    columns = {}
    cleaned_sets = []
    for path in args.csv:
        records = read_csv(path)
        kept = clean_data(records, args.target_weight, iqr_mode)
        label = Path(path).stem
        if len(kept) >= 2:
            columns[f"{label}/iters"] = summarize([r.iterations for r in kept])
            columns[f"{label}/dur_s"] = summarize([r.duration_s for r in kept])
        cleaned_sets.append((label, kept))
        print(f"{label}: {len(records)} runs, {len(kept)} kept after cleaning")
    if columns:
        print(format_summary_table(columns))
    if len(cleaned_sets) == 2 and all(len(k) >= 2 for _, k in cleaned_sets):
        (la, ka), (lb, kb) = cleaned_sets
        t, p = welch_t_test([r.duration_s for r in ka], [r.duration_s for r in kb])
        print(f"welch t-test on durations ({la} vs {lb}): t = {t:.4f}, p = {p:.4g}")
        t, p = welch_t_test([r.iterations for r in ka], [r.iterations for r in kb])
        print(f"welch t-test on iterations ({la} vs {lb}): t = {t:.4f}, p = {p:.4g}")
    if args.out:
        kept_all = [r for _, kept in cleaned_sets for r in kept]
        write_csv(kept_all, args.out)
        print(f"cleaned records -> {args.out}")
    return EXIT_OK


def _cmd_graph(args) -> int:
    pool = load_pool(args.pool)
    if args.source == "pool":
        paths = list(pool.playout_paths())
    else:
        sample = define_sample(pool, args.percent)
        playouts = args.walk_playouts or pool.provenance.playouts
        walk = record_playout_paths(pool.spec, pool.provenance.rounds, playouts,
                                    DiffState(0x0001, 0x0000), args.seed,
                                    draw_values=sample.values)
        paths = [[rec.c for rec in path] for path in walk]
    graph = graphs.build_graph(paths)
    metrics = graphs.graph_metrics(graph)
    fmt = graphs.GraphFormat.DOT if args.format == "dot" else graphs.GraphFormat.EDGE_CSV
    graphs.export_graph(graph, fmt, args.out)
    print(f"graph: {metrics['node_count']} nodes, {metrics['edge_count']} edges, "
          f"density {metrics['density']:.6f}, max degree {metrics['max_degree']}, "
          f"{metrics['weakly_connected_components']} weak component(s), "
          f"{metrics['self_loops']} self-loop(s) -> {args.out}")
    return EXIT_OK


_COMMANDS = {
    "pool": _cmd_pool,
    "sample": _cmd_sample,
    "search": _cmd_search,
    "experiment": _cmd_experiment,
    "analyze": _cmd_analyze,
    "graph": _cmd_graph,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        defaults = {a.dest: a.default for g in parser._subparsers._group_actions
                    for a in g.choices[args.command]._actions} if args.command else {}
        _merge_config_file(args, defaults)
        _coerce_types(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _coerce_types(args) -> None:
    """Config-file values arrive as strings; coerce the numeric options."""
    for key in ("rounds", "target_weight", "max_iterations", "seed", "runs",
                "jobs", "playouts", "pool_seed", "pool_rounds", "walk_playouts"):
        value = getattr(args, key, None)
        if isinstance(value, str):
            try:
                setattr(args, key, int(value))
            except ValueError:
                raise UsageError(f"option {key!r} expects an integer, got {value!r}")
    for key in ("percent",):
        value = getattr(args, key, None)
        if isinstance(value, str):
            try:
                setattr(args, key, float(value))
            except ValueError:
                raise UsageError(f"option {key!r} expects a number, got {value!r}")


if __name__ == "__main__":
    sys.exit(main())
