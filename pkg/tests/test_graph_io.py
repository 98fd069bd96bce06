"""Tests for localmds.lib.graph_io, the plain-text graph format."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from localmds import generators
from localmds.exceptions import GraphError, GraphFormatError
from localmds.graph import Graph
from localmds.lib.graph_io import (
    format_graph,
    format_rational,
    parse_graph,
    parse_rational,
    read_graph,
    write_graph,
)


class TestRationals:
    """parse_rational / format_rational."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("3", Fraction(3)), ("1/2", Fraction(1, 2)), ("6/4", Fraction(3, 2)), ("-2/3", Fraction(-2, 3))],
    )
    def test_parse(self, text: str, expected: Fraction) -> None:
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "a", "1/0", "1/2/3", "0.5"])
    def test_parse_rejects(self, text: str) -> None:
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_format_integer_keeps_denominator(self) -> None:
        assert format_rational(Fraction(3)) == "3/1"


class TestParse:
    """parse_graph on hand-written text."""

    def test_minimal(self) -> None:
        g = parse_graph("p 3 2\ne 0 1\ne 1 2\n")
        assert g.vertices == (0, 1, 2)
        assert g.edges == ((0, 1), (1, 2))
        assert g.meta is None

    def test_isolated_vertices_come_from_header(self) -> None:
        g = parse_graph("p 4 0\n")
        assert g.n == 4
        assert g.m == 0

    def test_weights(self) -> None:
        g = parse_graph("p 2 1\ne 0 1\nvw 1 5/2\new 0 1 3\n")
        assert g.weight(1) == Fraction(5, 2)
        assert g.edge_weight(0, 1) == 3

    def test_free_comment_ignored(self) -> None:
        g = parse_graph("c just a note\np 1 0\n")
        assert g.n == 1
        assert g.meta is None

    def test_metadata(self) -> None:
        text = "c family=grid\nc planar=true\nc genus=0\nc arboricity=2\nc c=3\nc t=3\np 1 0\n"
        meta = parse_graph(text).meta
        assert meta is not None
        assert meta.family == "grid"
        assert meta.density_upper_bound == 3
        assert meta.k3t_exclusion == 3

    def test_missing_header(self) -> None:
        with pytest.raises(GraphFormatError):
            parse_graph("e 0 1\n")

    def test_edge_count_mismatch(self) -> None:
        with pytest.raises(GraphFormatError) as exc_info:
            parse_graph("p 3 2\ne 0 1\n")
        assert "2 edges" in str(exc_info.value)

    def test_bad_line_reports_number(self) -> None:
        with pytest.raises(GraphFormatError) as exc_info:
            parse_graph("p 3 1\n\ne 0 x\n")
        assert exc_info.value.line == 3

    def test_unknown_record(self) -> None:
        with pytest.raises(GraphFormatError) as exc_info:
            parse_graph("p 2 0\nq 0 1\n")
        assert exc_info.value.line == 2

    def test_self_loop_surfaces_as_format_error(self) -> None:
        with pytest.raises(GraphFormatError):
            parse_graph("p 2 1\ne 1 1\n")

    def test_bad_weight(self) -> None:
        with pytest.raises(GraphFormatError) as exc_info:
            parse_graph("p 2 1\ne 0 1\new 0 1 1/0\n")
        assert exc_info.value.line == 3

    def test_invalid_metadata(self) -> None:
        with pytest.raises(GraphFormatError) as exc_info:
            parse_graph("c family=grid\nc planar=maybe\np 1 0\n")
        assert "planar" in str(exc_info.value)


class TestFormat:
    """format_graph output and file helpers."""

    def test_unit_weights_not_written(self) -> None:
        text = format_graph(Graph.from_edges(2, [(0, 1)]))
        assert text == "p 2 1\ne 0 1\n"

    def test_non_unit_weights_written(self) -> None:
        g = Graph.from_edges(2, [(0, 1)], vertex_weights={0: "1/3"}, edge_weights={(0, 1): 2})
        text = format_graph(g)
        assert "vw 0 1/3" in text
        assert "ew 0 1 2/1" in text

    def test_metadata_lines_first(self) -> None:
        lines = format_graph(generators.grid(2, 2)).splitlines()
        assert lines[0] == "c family=grid"
        assert lines.index("p 4 4") > 0

    def test_sparse_ids_rejected(self) -> None:
        with pytest.raises(GraphError) as exc_info:
            format_graph(Graph([0, 2]))
        assert exc_info.value.key == "non_dense_ids"

    def test_weighted_graph_survives_file(self, tmp_path: Path) -> None:
        g = Graph.from_edges(3, [(0, 1), (1, 2)], vertex_weights={2: 7}, edge_weights={(1, 2): "2/3"})
        path = tmp_path / "w.g"
        write_graph(g, path)
        assert read_graph(path) == g

    def test_generated_metadata_survives_file(self, tmp_path: Path) -> None:
        g = generators.torus_grid(3, 4)
        path = tmp_path / "torus.g"
        write_graph(g, path)
        loaded = read_graph(path)
        assert loaded == g
        assert loaded.meta == g.meta
