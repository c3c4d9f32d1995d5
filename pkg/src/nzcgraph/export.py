"""Byte-stable graph exports: Graphviz DOT, JSON and a plain edge list.

Output depends only on ``(q, n)``: vertices and edges are written in
ascending id order, with ``\\n`` line endings and no timestamps.  Writers
stream, so edge lists of a few million lines never sit in memory.
"""
from __future__ import annotations

import enum
import json
from typing import Iterator, TextIO

import numpy as np

from .graph import ComponentGraph
from .kernels import pack_rows
from .space import GraphParams, coefficient_matrix, validate_params


class ExportFormat(enum.Enum):
    DOT = "dot"
    JSON = "json"
    EDGELIST = "edgelist"


def _vertex_records(g: ComponentGraph) -> Iterator[tuple[int, list[int], list[int]]]:
    coeffs = coefficient_matrix(g.params).tolist()
    for i, c in enumerate(coeffs):
        yield i + 1, c, [j + 1 for j, x in enumerate(c) if x]


def write_edgelist(g: ComponentGraph, out: TextIO) -> None:
    for u, v in g.edges():
        out.write(f"{u} {v}\n")


def write_dot(g: ComponentGraph, out: TextIO) -> None:
    q, n = g.params.q, g.params.n
    out.write(f'graph "nzc_q{q}_n{n}" {{\n')
    for vid, c, support in _vertex_records(g):
        label = "(" + ",".join(map(str, c)) + f") k={len(support)}"
        out.write(f'  {vid} [label="{label}"];\n')
    for u, v in g.edges():
        out.write(f"  {u} -- {v};\n")
    out.write("}\n")


def write_json(g: ComponentGraph, out: TextIO) -> None:
    """``{params, vertices: [{id, coeffs, support}], edges: [[u, v], ...]}``, one record per line."""
    compact = dict(separators=(",", ":"))
    out.write('{"params":' + json.dumps({"q": g.params.q, "n": g.params.n}, **compact) + ",\n")
    out.write('"vertices":[\n')
    first = True
    for vid, c, support in _vertex_records(g):
        if not first:
            out.write(",\n")
        out.write(json.dumps({"id": vid, "coeffs": c, "support": support}, **compact))
        first = False
    out.write('\n],\n"edges":[\n')
    first = True
    for u, v in g.edges():
        if not first:
            out.write(",\n")
        out.write(f"[{u},{v}]")
        first = False
    out.write("\n]}\n")


WRITERS = {
    ExportFormat.DOT: write_dot,
    ExportFormat.JSON: write_json,
    ExportFormat.EDGELIST: write_edgelist,
}


def export_graph(g: ComponentGraph, fmt: ExportFormat, out: TextIO) -> None:
    WRITERS[fmt](g, out)


def read_json_export(text: str) -> tuple[GraphParams, list[dict], list[tuple[int, int]]]:
    data = json.loads(text)
    params = validate_params(data["params"]["q"], data["params"]["n"])
    return params, data["vertices"], [tuple(e) for e in data["edges"]]


def rows_from_edges(vertex_count: int, edges) -> np.ndarray:
    """Packed adjacency rows (the in-memory layout) rebuilt from an id edge list."""
    dense = np.zeros((vertex_count, vertex_count), dtype=bool)
    for u, v in edges:
        dense[u - 1, v - 1] = dense[v - 1, u - 1] = True
    return pack_rows(dense)


def read_edgelist(text: str) -> list[tuple[int, int]]:
    return [tuple(int(x) for x in line.split()) for line in text.splitlines() if line.strip()]
