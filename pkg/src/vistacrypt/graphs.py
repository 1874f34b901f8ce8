"""Transition graphs over output differentials and their exports.

Nodes are distinct output differentials; a directed edge connects
consecutive differentials within one recorded playout, weighted by how
often that succession occurred.
"""
from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

import networkx as nx


class GraphFormat(Enum):
    DOT = "dot"
    EDGE_CSV = "edge-csv"


@dataclass
class DiffGraph:
    nodes: set[int] = field(default_factory=set)
    edges: dict[tuple[int, int], int] = field(default_factory=dict)
    directed: bool = True


def build_graph(paths: Sequence[Sequence[int]]) -> DiffGraph:
    """Accumulate nodes and successive-pair edges from playout paths."""
    if not paths:
        raise ValueError("no paths to build a graph from")
    g = DiffGraph()
    for path in paths:
        g.nodes.update(path)
        for src, dst in zip(path, path[1:]):
            key = (src, dst)
            g.edges[key] = g.edges.get(key, 0) + 1
    return g


def to_networkx(g: DiffGraph) -> nx.DiGraph:
    nxg = nx.DiGraph()
    nxg.add_nodes_from(g.nodes)
    for (src, dst), freq in g.edges.items():
        nxg.add_edge(src, dst, weight=freq)
    return nxg


def graph_metrics(g: DiffGraph) -> dict:
    """Structural metrics; density counts simple directed edges only, with
    self-loops reported separately."""
    if not g.nodes:
        raise ValueError("metrics of an empty graph are undefined")
    n = len(g.nodes)
    self_loops = sum(1 for (src, dst) in g.edges if src == dst)
    simple_edges = len(g.edges) - self_loops
    nxg = to_networkx(g)
    return {
        "node_count": n,
        "edge_count": len(g.edges),
        "self_loops": self_loops,
        "density": simple_edges / (n * (n - 1)) if n > 1 else 0.0,
        "max_degree": max(deg for _, deg in nxg.degree()),
        "weakly_connected_components": nx.number_weakly_connected_components(nxg),
    }


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_graph(g: DiffGraph, fmt: GraphFormat, path) -> None:
    """Byte-deterministic export: nodes and edges in numeric order."""
    path = Path(path)
    if fmt is GraphFormat.DOT:
        lines = ["digraph differentials {"]
        for node in sorted(g.nodes):
            lines.append(f'    n{node} [label="0x{node:04x}"];')
        for (src, dst) in sorted(g.edges):
            lines.append(f"    n{src} -> n{dst} [weight={g.edges[(src, dst)]}];")
        lines.append("}")
        _atomic_write(path, "\n".join(lines) + "\n")
    elif fmt is GraphFormat.EDGE_CSV:
        rows = ["from,to,frequency"]
        for (src, dst) in sorted(g.edges):
            rows.append(f"0x{src:04x},0x{dst:04x},{g.edges[(src, dst)]}")
        _atomic_write(path, "\n".join(rows) + "\n")
    else:
        raise ValueError(f"unsupported graph format: {fmt!r}")


class EdgeCsvFormatError(ValueError):
    """Raised when an edge-list CSV does not parse."""


def read_edge_csv(path) -> DiffGraph:
    path = Path(path)
    g = DiffGraph()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["from", "to", "frequency"]:
            raise EdgeCsvFormatError(f"{path}: expected header from,to,frequency")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                src, dst, freq = int(row[0], 16), int(row[1], 16), int(row[2])
            except (ValueError, IndexError):
                raise EdgeCsvFormatError(f"{path}:{lineno}: malformed edge") from None
            g.nodes.update((src, dst))
            g.edges[(src, dst)] = freq
    return g
