"""Unit tests for localmds.exceptions."""

from __future__ import annotations

import pytest

import localmds
from localmds.exceptions import (
    ClusteringError,
    ClusterTooLargeError,
    GraphError,
    GraphFormatError,
    LocalMdsError,
    NotDominatingError,
    PartitionError,
    ProgramContractError,
    RoundLimitExceeded,
    SearchRefusedError,
)


class TestHierarchy:
    """Every library error shares one base class."""

    @pytest.mark.parametrize(
        "error",
        [
            GraphError("unknown_vertex", vertex=3),
            GraphFormatError(4, "bad token"),
            PartitionError("partition_non_cover", vertices="{1}"),
            SearchRefusedError("exact-mds", 30, 25),
            RoundLimitExceeded("flood", 5, None),
            ProgramContractError(0, 9),
            ClusteringError("epsilon_range", epsilon=2),
            ClusterTooLargeError(range(30), 25),
            NotDominatingError({4}),
        ],
    )
    def test_is_local_mds_error(self, error: Exception) -> None:
        assert isinstance(error, LocalMdsError)

    def test_value_errors(self) -> None:
        assert isinstance(GraphError("unknown_vertex", vertex=1), ValueError)
        assert isinstance(NotDominatingError({1}), ValueError)

    def test_exported_from_package(self) -> None:
        assert localmds.GraphError is GraphError
        assert "DensityBoundWarning" in localmds.__all__


class TestMessages:
    """Messages come from templates and attributes are kept."""

    def test_graph_error(self) -> None:
        err = GraphError("self_loop", vertex=2)
        assert str(err) == "Self-loop on vertex 2 is not allowed"
        assert err.key == "self_loop"
        assert err.fields == {"vertex": 2}

    def test_format_error_line(self) -> None:
        err = GraphFormatError(7, "unknown record 'x'")
        assert err.line == 7
        assert str(err).startswith("Line 7:")

    def test_search_refused(self) -> None:
        err = SearchRefusedError("exact-mds", 30, 25)
        assert str(err) == "exact-mds refused: 30 exceeds the cap of 25"

    def test_partition_names_center(self) -> None:
        err = PartitionError("partition_overlap", center=5, vertex=2)
        assert err.center == 5
        assert "5" in str(err)

    def test_cluster_preview_truncated(self) -> None:
        err = ClusterTooLargeError(range(30), 25)
        assert "{0, 1, 2, 3, ...}" in str(err)
        assert "30 vertices" in str(err)

    def test_not_dominating(self) -> None:
        err = NotDominatingError([5, 2])
        assert err.undominated == {2, 5}
        assert "{2, 5}" in str(err)
