"""Tests for localmds.ptas: refining a dominating set through clustering."""

from __future__ import annotations

import warnings
from fractions import Fraction

import pytest

from localmds import generators
from localmds.clustering import expansion_preset
from localmds.exceptions import (
    ClusteringError,
    ClusterTooLargeError,
    DensityBoundWarning,
    NotDominatingError,
)
from localmds.graph import Graph
from localmds.lenzen import modified_lenzen
from localmds.oracle import gamma, greedy_mds, is_dominating
from localmds.ptas import dominator_parts, refine, refine_delta


class TestDominatorParts:
    """Radius-1 parts around the members of d."""

    def test_cycle(self) -> None:
        parts = dominator_parts(generators.cycle(9), frozenset({0, 3, 6}))
        assert parts == [(0, frozenset({1, 8})), (3, frozenset({2, 4})), (6, frozenset({5, 7}))]

    def test_smallest_dominator_wins(self, p3: Graph) -> None:
        assert dominator_parts(p3, frozenset({0, 2})) == [(0, frozenset({1})), (2, frozenset())]


class TestDelta:
    """refine_delta = epsilon / (2 c nabla1), at most 1/2."""

    def test_value(self) -> None:
        assert refine_delta(1, 2, 2) == Fraction(1, 8)

    def test_clamped(self) -> None:
        assert refine_delta(1, 1, Fraction(1, 2)) == Fraction(1, 2)


class TestRefine:
    """refine() on small graphs."""

    def test_cycle(self) -> None:
        g = generators.cycle(9)
        d = greedy_mds(g)
        assert d == {0, 3, 6}
        result = refine(g, d, 1, 2, 2, expansion_preset("planar"))
        assert len(result) == 3
        assert is_dominating(g, result)

    def test_improves_a_poor_set(self, grid5: Graph) -> None:
        d = modified_lenzen(grid5, 3).dominating_set
        result = refine(grid5, d, Fraction(1, 2), 2, 3, expansion_preset("planar"))
        assert is_dominating(grid5, result)
        assert len(result) == gamma(grid5) == 7

    def test_whole_vertex_set_as_input(self, p5: Graph) -> None:
        result = refine(p5, p5.vertices, Fraction(1, 2), 5, 2, expansion_preset("planar"))
        assert result == {0, 3}

    def test_not_dominating(self, c6: Graph) -> None:
        with pytest.raises(NotDominatingError):
            refine(c6, {0}, 1, 2, 2, expansion_preset("planar"))

    def test_cluster_too_large(self) -> None:
        g = generators.cycle(9)
        with pytest.raises(ClusterTooLargeError) as exc_info:
            refine(g, {0, 3, 6}, 1, 2, 2, expansion_preset("planar"), cluster_cap=4)
        assert exc_info.value.cap == 4
        assert len(exc_info.value.cluster) > 4

    @pytest.mark.parametrize("name", ["epsilon", "c", "nabla1_bound"])
    def test_non_positive_parameter(self, name: str) -> None:
        g = generators.cycle(9)
        args = {"epsilon": Fraction(1, 2), "c": 2, "nabla1_bound": 2}
        args[name] = 0
        with pytest.raises(ClusteringError) as exc_info:
            refine(g, {0, 3, 6}, args["epsilon"], args["c"], args["nabla1_bound"], expansion_preset("planar"))
        assert exc_info.value.fields["name"] == name

    def test_density_warning(self) -> None:
        g = generators.cycle(9)
        with pytest.warns(DensityBoundWarning):
            refine(g, {0, 3, 6}, 1, 2, Fraction(1, 2), expansion_preset("planar"))

    def test_no_warning_within_bound(self) -> None:
        g = generators.cycle(9)
        with warnings.catch_warnings():
            warnings.simplefilter("error", DensityBoundWarning)
            refine(g, {0, 3, 6}, 1, 2, 2, expansion_preset("planar"))

    def test_disconnected_graph(self) -> None:
        g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        result = refine(g, {0, 2, 3, 5}, Fraction(1, 2), 2, 2, expansion_preset("planar"))
        assert result == {1, 4}
