"""graph_io — the plain-text graph format.

Layout, one record per line::

    c family=grid          metadata (key=value), written first
    p <n> <m>              header
    e <u> <v>              one line per edge
    vw <v> <num>/<den>     vertex weight, only when it is not 1
    ew <u> <v> <num>/<den> edge weight, only when it is not 1

Vertex ids are ``0..n-1``.  A ``c`` line without ``=`` is a free comment.
Record tags come from the ``formats`` section of the defaults.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Union

from localmds.exceptions import GraphError, GraphFormatError
from localmds.graph import Graph
from localmds.lib import config
from localmds.lib.models import GraphClass


def parse_rational(text: str) -> Fraction:
    """Parse ``num/den`` or a bare integer into a Fraction.

    Raises:
        ValueError: If the text is not a rational with a non-zero denominator.
    """
    sep = config.get_str("formats.rational_separator")
    parts = text.split(sep)
    if len(parts) > 2 or not all(p.strip().lstrip("-").isdigit() for p in parts):
        raise ValueError(f"not a rational: {text!r}")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(parts[0]), int(parts[1]) if len(parts) == 2 else 1)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``num/den``."""
    return f"{value.numerator}{config.get_str('formats.rational_separator')}{value.denominator}"


def _ints(tokens: list[str], count: int, lineno: int) -> list[int]:
    if len(tokens) != count or not all(tok.isdigit() for tok in tokens):
        raise GraphFormatError(lineno, f"expected {count} non-negative integers, got {tokens}")
    return [int(tok) for tok in tokens]


def parse_graph(text: str) -> Graph:
    """Parse graph text into a Graph.

    Args:
        text: Contents in the format described in the module docstring.

    Returns:
        The parsed graph, with metadata attached when ``c key=value`` lines
        were present.

    Raises:
        GraphFormatError: On any malformed line, a missing header or an
            edge count that disagrees with the header.
    """
    fmt = config.get_mapping("formats")
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    vertex_weights: dict[int, Fraction] = {}
    edge_weights: dict[tuple[int, int], Fraction] = {}
    meta: dict[str, str] = {}
    meta_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        tag, rest = tokens[0], tokens[1:]
        if tag == fmt["comment"]:
            body = " ".join(rest)
            if fmt["meta_separator"] in body:
                key, value = body.split(fmt["meta_separator"], 1)
                meta[key.strip()] = value.strip()
                meta_line = lineno
            continue
        if tag == fmt["header"]:
            if header is not None:
                raise GraphFormatError(lineno, "duplicate header")
            n, m = _ints(rest, 2, lineno)
            header = (n, m)
            continue
        if header is None:
            raise GraphFormatError(lineno, "record before the 'p' header")
        try:
            if tag == fmt["edge"]:
                u, v = _ints(rest, 2, lineno)
                edges.append((u, v))
            elif tag == fmt["vertex_weight"]:
                if len(rest) != 2:
                    raise GraphFormatError(lineno, "expected a vertex and a weight")
                (v,) = _ints(rest[:1], 1, lineno)
                vertex_weights[v] = parse_rational(rest[1])
            elif tag == fmt["edge_weight"]:
                if len(rest) != 3:
                    raise GraphFormatError(lineno, "expected two endpoints and a weight")
                u, v = _ints(rest[:2], 2, lineno)
                edge_weights[(u, v)] = parse_rational(rest[2])
            else:
                raise GraphFormatError(lineno, f"unknown record '{tag}'")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(lineno, str(exc)) from exc

    if header is None:
        raise GraphFormatError(0, "missing 'p' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(0, f"header declares {m} edges, found {len(edges)}")
    graph_meta = None
    if meta:
        try:
            graph_meta = GraphClass.from_dict(meta)
        except ValueError as exc:
            raise GraphFormatError(meta_line, config.message("bad_metadata", detail=exc)) from exc
    try:
        return Graph(
            range(n),
            edges,
            vertex_weights=vertex_weights,
            edge_weights=edge_weights,
            meta=graph_meta,
        )
    except GraphError as exc:
        raise GraphFormatError(0, str(exc)) from exc


def format_graph(g: Graph) -> str:
    """Serialize a Graph; the inverse of :func:`parse_graph`.

    Raises:
        GraphError: If the vertex ids are not exactly ``0..n-1``.
    """
    for expected, v in enumerate(g.vertices):
        if v != expected:
            raise GraphError("non_dense_ids", last=g.n - 1, vertex=v)
    fmt = config.get_mapping("formats")
    lines: list[str] = []
    if g.meta is not None:
        lines += [
            f"{fmt['comment']} {key}{fmt['meta_separator']}{value}"
            for key, value in g.meta.to_dict().items()
        ]
    lines.append(f"{fmt['header']} {g.n} {g.m}")
    lines += [f"{fmt['edge']} {u} {v}" for u, v in g.edges]
    lines += [
        f"{fmt['vertex_weight']} {v} {format_rational(w)}"
        for v, w in g.vertex_weights().items()
        if w != 1
    ]
    lines += [
        f"{fmt['edge_weight']} {u} {v} {format_rational(w)}"
        for (u, v), w in g.edge_weights().items()
        if w != 1
    ]
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    """Read and parse a graph file."""
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: Union[str, Path]) -> None:
    """Serialize a graph to a file."""
    Path(path).write_text(format_graph(g), encoding="utf-8")
