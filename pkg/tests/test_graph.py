"""Tests for localmds.graph: construction, neighborhoods, contraction, density."""

from __future__ import annotations

from fractions import Fraction

import networkx as nx
import pytest

from localmds import generators
from localmds.exceptions import GraphError, PartitionError
from localmds.graph import Graph, ball, contract_stars, degeneracy_bound, edge_density


def _k4() -> Graph:
    return Graph.from_networkx(nx.complete_graph(4))


class TestConstruction:
    """Validation performed by the Graph constructor."""

    def test_self_loop_rejected(self) -> None:
        with pytest.raises(GraphError) as exc_info:
            Graph([0, 1], [(1, 1)])
        assert exc_info.value.key == "self_loop"

    def test_parallel_edge_rejected(self) -> None:
        with pytest.raises(GraphError) as exc_info:
            Graph([0, 1], [(0, 1), (1, 0)])
        assert exc_info.value.key == "parallel_edge"

    def test_foreign_endpoint_rejected(self) -> None:
        with pytest.raises(GraphError) as exc_info:
            Graph([0, 1], [(0, 5)])
        assert exc_info.value.key == "foreign_endpoint"

    @pytest.mark.parametrize("bad", [-1, "a", True, 1.5])
    def test_bad_vertex_id_rejected(self, bad: object) -> None:
        with pytest.raises(GraphError):
            Graph([bad])

    @pytest.mark.parametrize("weight", [0, -1, "-1/2"])
    def test_non_positive_weight_rejected(self, weight: object) -> None:
        with pytest.raises(GraphError) as exc_info:
            Graph([0, 1], [(0, 1)], edge_weights={(0, 1): weight})
        assert exc_info.value.key == "non_positive_weight"

    def test_weights_default_to_one(self, triangle: Graph) -> None:
        assert triangle.weight(0) == 1
        assert triangle.edge_weight(2, 0) == 1
        assert triangle.is_unweighted()

    def test_edge_weight_keys_accept_either_order(self) -> None:
        g = Graph([0, 1], [(0, 1)], edge_weights={(1, 0): "3/2"})
        assert g.edge_weight(0, 1) == Fraction(3, 2)
        assert not g.is_unweighted()

    def test_edges_are_sorted_pairs(self) -> None:
        g = Graph([3, 1, 2], [(3, 1), (2, 1)])
        assert g.vertices == (1, 2, 3)
        assert g.edges == ((1, 2), (1, 3))


class TestValueSemantics:
    """Equality, hashing and metadata."""

    def test_equal_graphs_hash_equal(self) -> None:
        a = Graph.from_edges(3, [(0, 1), (1, 2)])
        b = Graph.from_edges(3, [(2, 1), (1, 0)])
        assert a == b
        assert hash(a) == hash(b)

    def test_meta_ignored_by_equality(self, p3: Graph) -> None:
        plain = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert p3.meta is not None
        assert p3 == plain
        assert p3.with_meta(None).meta is None

    def test_weights_part_of_equality(self) -> None:
        a = Graph([0, 1], [(0, 1)])
        b = Graph([0, 1], [(0, 1)], vertex_weights={0: 2})
        assert a != b

    def test_underlying_graph_is_frozen(self, triangle: Graph) -> None:
        with pytest.raises(nx.NetworkXError):
            triangle.nx_graph.add_edge(0, 7)


class TestNeighborhoods:
    """Open, closed and r-neighborhoods."""

    def test_closed_neighborhood(self, p3: Graph) -> None:
        assert p3.neighbors(1) == {0, 2}
        assert p3.closed_neighborhood(0) == {0, 1}

    def test_ball_radius_zero_is_vertex(self, p3: Graph) -> None:
        assert ball(p3, 0, 0) == {0}

    def test_ball_radius_one(self, p3: Graph) -> None:
        assert ball(p3, 0, 1) == {0, 1}

    def test_ball_in_grid_is_diamond(self, grid6: Graph) -> None:
        assert len(grid6.ball(14, 2)) == 13

    def test_ball_negative_radius(self, p3: Graph) -> None:
        with pytest.raises(GraphError):
            p3.ball(0, -1)

    def test_unknown_vertex(self, p3: Graph) -> None:
        with pytest.raises(GraphError) as exc_info:
            p3.neighbors(9)
        assert exc_info.value.key == "unknown_vertex"

    def test_set_neighborhood(self, p5: Graph) -> None:
        assert p5.set_neighborhood([0, 4]) == {0, 1, 3, 4}


class TestSubgraphs:
    """Induced subgraphs, deletions and components."""

    def test_induced_keeps_weights(self) -> None:
        g = Graph.from_edges(3, [(0, 1), (1, 2)], vertex_weights={1: 4}, edge_weights={(0, 1): 2})
        sub = g.induced([0, 1])
        assert sub.edges == ((0, 1),)
        assert sub.weight(1) == 4
        assert sub.edge_weight(0, 1) == 2

    def test_remove_vertices(self, p5: Graph) -> None:
        rest = p5.remove_vertices([2])
        assert rest.vertices == (0, 1, 3, 4)
        assert rest.components() == [frozenset({0, 1}), frozenset({3, 4})]

    def test_with_unit_edge_weights(self) -> None:
        g = Graph([0, 1], [(0, 1)], vertex_weights={0: 3}, edge_weights={(0, 1): 5})
        unit = g.with_unit_edge_weights()
        assert unit.edge_weight(0, 1) == 1
        assert unit.weight(0) == 3


class TestContractStars:
    """Star contraction and partition validation."""

    def test_triangle_contraction(self, triangle: Graph) -> None:
        part = contract_stars(triangle, [(0, {1}), (2, set())])
        q = part.quotient
        assert q.vertices == (0, 2)
        assert q.edges == ((0, 2),)
        assert q.edge_weight(0, 2) == 2
        assert q.weight(0) == 2
        assert q.weight(2) == 1

    def test_star_collapses_to_single_vertex(self) -> None:
        g = generators.star(5)
        part = contract_stars(g, [(0, range(1, 6))])
        assert part.quotient.n == 1
        assert part.quotient.m == 0
        assert part.quotient.weight(0) == 6

    def test_members(self, triangle: Graph) -> None:
        part = contract_stars(triangle, [(0, {1}), (2, set())])
        assert part.members() == {0: frozenset({0, 1}), 2: frozenset({2})}

    def test_weights_are_summed(self) -> None:
        g = Graph.from_edges(
            4,
            [(0, 1), (1, 2), (0, 3), (2, 3)],
            vertex_weights={1: "1/2"},
            edge_weights={(1, 2): 3, (0, 3): 2},
        )
        q = contract_stars(g, [(0, {1}), (3, {2})]).quotient
        assert q.weight(0) == Fraction(3, 2)
        assert q.edge_weight(0, 3) == 5

    def test_overlap_rejected(self, p3: Graph) -> None:
        with pytest.raises(PartitionError) as exc_info:
            contract_stars(p3, [(1, {0}), (0, {2})])
        assert exc_info.value.center == 0

    def test_non_adjacent_leaf_rejected(self, p3: Graph) -> None:
        with pytest.raises(PartitionError) as exc_info:
            contract_stars(p3, [(0, {2}), (1, set())])
        assert exc_info.value.key == "partition_non_adjacent"

    def test_uncovered_vertex_rejected(self, p3: Graph) -> None:
        with pytest.raises(PartitionError) as exc_info:
            contract_stars(p3, [(1, {0})])
        assert exc_info.value.key == "partition_non_cover"
        assert "2" in str(exc_info.value)


class TestDensity:
    """edge_density and degeneracy_bound."""

    def test_edge_density_k4(self) -> None:
        assert edge_density(_k4()) == Fraction(3, 2)

    def test_edge_density_tree(self) -> None:
        assert edge_density(generators.random_tree(9, seed=3)) == Fraction(8, 9)

    def test_edge_density_empty_graph(self) -> None:
        with pytest.raises(GraphError):
            edge_density(Graph([]))

    @pytest.mark.parametrize(
        ("graph", "expected"),
        [
            (_k4(), Fraction(3, 2)),
            (generators.path(5), Fraction(4, 5)),
            (generators.complete_bipartite(3, 3), Fraction(3, 2)),
            (generators.grid(3, 3), Fraction(4, 3)),
        ],
    )
    def test_exact_maximum_density(self, graph: Graph, expected: Fraction) -> None:
        bound = degeneracy_bound(graph)
        assert bound.exact
        assert bound.value == expected

    def test_dense_part_dominates(self) -> None:
        # K4 plus a long pendant path: the K4 sets the maximum.
        edges = list(nx.complete_graph(4).edges) + [(3, 4), (4, 5), (5, 6), (6, 7)]
        assert degeneracy_bound(Graph.from_edges(8, edges)).value == Fraction(3, 2)

    def test_above_cap_falls_back_to_cores(self) -> None:
        bound = degeneracy_bound(_k4(), cap=2)
        assert not bound.exact
        assert bound.value == 3
