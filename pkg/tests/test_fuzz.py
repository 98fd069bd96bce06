"""Fuzz tests for localmds robustness under random input."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from localmds import generators
from localmds.clustering import cluster, expansion_preset, heavy_star_partition
from localmds.exceptions import FormulaError
from localmds.lenzen import approximation_bound, genus_algorithm, modified_lenzen
from localmds.lib import config
from localmds.lib.graph_io import parse_rational
from localmds.logic import parse_formula
from localmds.oracle import greedy_mds, is_dominating, ratio

trees = st.builds(
    generators.random_tree,
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=0, max_value=10_000),
)

planar_graphs = st.builds(
    generators.random_planar,
    st.integers(min_value=3, max_value=24),
    st.integers(min_value=0, max_value=10_000),
    st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 2)]),
)


class TestTextInputFuzz:
    """Parsers fail with their own errors, never anything else."""

    @given(st.text(max_size=40))
    @settings(max_examples=200, suppress_health_check=[HealthCheck.too_slow])
    def test_parse_rational(self, text: str) -> None:
        try:
            assert isinstance(parse_rational(text), Fraction)
        except ValueError:
            pass

    @given(st.text(alphabet="()Exyz=<notandorimpliesforallexists ", max_size=80))
    @settings(max_examples=200, suppress_health_check=[HealthCheck.too_slow])
    def test_parse_formula(self, text: str) -> None:
        try:
            parse_formula(text)
        except FormulaError:
            pass

    @given(st.text(min_size=0, max_size=100))
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_config_get(self, key: str) -> None:
        try:
            config.get(key)
        except (KeyError, TypeError):
            pass


class TestAlgorithmFuzz:
    """Dominating set guarantees on random sparse graphs."""

    @given(trees)
    @settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_lenzen_on_trees(self, g) -> None:
        chosen = modified_lenzen(g, 1).dominating_set
        assert is_dominating(g, chosen)
        assert ratio(g, chosen) <= approximation_bound(1, 3)

    @given(planar_graphs)
    @settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_every_algorithm_dominates(self, g) -> None:
        assert is_dominating(g, modified_lenzen(g, 3).dominating_set)
        assert is_dominating(g, genus_algorithm(g, 0).dominating_set)
        assert is_dominating(g, greedy_mds(g))

    @given(planar_graphs)
    @settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_heavy_stars_capture_weight(self, g) -> None:
        part = heavy_star_partition(g, 3)
        captured = g.total_edge_weight() - part.quotient.total_edge_weight()
        assert captured >= g.total_edge_weight() / 24

    @given(planar_graphs)
    @settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_cluster_partitions(self, g) -> None:
        result = cluster(g, Fraction(1, 2), expansion_preset("planar"))
        assert sorted(v for part in result.clusters for v in part) == list(g.vertices)
        assert result.crossing_weight <= g.total_edge_weight() / 2
