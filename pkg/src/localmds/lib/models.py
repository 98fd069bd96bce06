"""Data models shared across localmds.

Typed, frozen dataclasses that every algorithm module returns instead of
raw tuples and dicts: partitions, minor models, transcripts and results.
``GraphClass`` carries the class metadata that generators attach to their
graphs and that the text format round-trips through ``c key=value`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Mapping, Optional

if TYPE_CHECKING:
    from localmds.graph import Graph


# ---------------------------------------------------------------------------
# Graph class metadata
# ---------------------------------------------------------------------------


_BOOL_TEXT = {"true": True, "false": False}


@dataclass(frozen=True)
class GraphClass:
    """Known class membership of a generated graph.

    Attributes:
        family: Generator family name (e.g. 'grid').
        planar: Whether the graph is planar by construction.
        genus_upper_bound: Orientable genus upper bound.
        arboricity_upper_bound: Arboricity upper bound.
        density_upper_bound: Bound c on the edge density of depth-1 minors,
            or None when unknown.
        k3t_exclusion: A t such that K_{3,t} is excluded as a depth-1 minor,
            or None when unknown.
        params: Generator arguments, as sorted (name, text) pairs.
    """

    family: str
    planar: bool
    genus_upper_bound: int
    arboricity_upper_bound: int
    density_upper_bound: Optional[Fraction] = None
    k3t_exclusion: Optional[int] = None
    params: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict[str, str]:
        """Flatten to the ``key=value`` pairs written as ``c`` lines."""
        data = {
            "family": self.family,
            "planar": "true" if self.planar else "false",
            "genus": str(self.genus_upper_bound),
            "arboricity": str(self.arboricity_upper_bound),
        }
        if self.density_upper_bound is not None:
            data["c"] = str(self.density_upper_bound)
        if self.k3t_exclusion is not None:
            data["t"] = str(self.k3t_exclusion)
        for name, value in self.params:
            data[f"param.{name}"] = value
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, str]) -> GraphClass:
        """Build from parsed ``c`` lines.

        Args:
            data: Mapping produced by the graph reader.

        Returns:
            A GraphClass instance.

        Raises:
            ValueError: If validate_graph_class reports problems.
        """
        errors = validate_graph_class(data)
        if errors:
            raise ValueError("; ".join(errors))
        params = tuple(
            sorted(
                (key.split(".", 1)[1], value)
                for key, value in data.items()
                if key.startswith("param.")
            )
        )
        return cls(
            family=data["family"],
            planar=_BOOL_TEXT[data["planar"]],
            genus_upper_bound=int(data["genus"]),
            arboricity_upper_bound=int(data["arboricity"]),
            density_upper_bound=Fraction(data["c"]) if "c" in data else None,
            k3t_exclusion=int(data["t"]) if "t" in data else None,
            params=params,
        )


def validate_graph_class(data: Any) -> list[str]:
    """Validate a metadata mapping and return a list of error strings.

    Args:
        data: Raw mapping read from ``c`` lines.

    Returns:
        Error messages; empty when the mapping is valid.
    """
    if not isinstance(data, Mapping):
        return [f"metadata must be a mapping, got {type(data).__name__}"]
    errors: list[str] = []
    for key in ("family", "planar", "genus", "arboricity"):
        if key not in data:
            errors.append(f"missing metadata key '{key}'")
    if "planar" in data and data["planar"] not in _BOOL_TEXT:
        errors.append(f"'planar' must be true or false, got {data['planar']!r}")
    for key in ("genus", "arboricity", "t"):
        if key in data and not str(data[key]).isdigit():
            errors.append(f"'{key}' must be a non-negative integer, got {data[key]!r}")
    if "c" in data:
        try:
            if Fraction(data["c"]) <= 0:
                errors.append("'c' must be positive")
        except (ValueError, ZeroDivisionError):
            errors.append(f"'c' must be a rational, got {data['c']!r}")
    return errors


# ---------------------------------------------------------------------------
# Density
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityBound:
    """Maximum subgraph density, or an upper bound on it when ``exact`` is False."""

    value: Fraction
    exact: bool


# ---------------------------------------------------------------------------
# Partitions and minors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarPartition:
    """A partition of V(G) into vertex-disjoint stars with the contracted graph.

    Attributes:
        stars: (center, leaves) pairs in input order.
        quotient: One vertex per star, identified by the star's centre, with
            inherited vertex and edge weights.
    """

    stars: tuple[tuple[int, frozenset[int]], ...]
    quotient: Graph

    def members(self) -> dict[int, frozenset[int]]:
        """Map each centre to its full vertex set (centre plus leaves)."""
        return {center: leaves | {center} for center, leaves in self.stars}


@dataclass(frozen=True)
class ClusterPartition:
    """A partition of V(G) into connected clusters of bounded radius.

    Attributes:
        clusters: Vertex sets, sorted by smallest member.
        radius_bound: Guaranteed upper bound on each cluster's radius.
        crossing_weight: Total weight of edges joining different clusters.
        iterations: Number of star contractions performed (i0).
    """

    clusters: tuple[frozenset[int], ...]
    radius_bound: int
    crossing_weight: Fraction = Fraction(0)
    iterations: int = 0

    def cluster_of(self) -> dict[int, int]:
        """Map each vertex to the index of its cluster."""
        return {v: i for i, part in enumerate(self.clusters) for v in part}


@dataclass(frozen=True)
class MinorModel:
    """Branch sets witnessing H as a depth-1 minor of G.

    Attributes:
        branch_sets: Minor-vertex label to the vertex set of its star in G.
            Labels ``a1..a3`` are the left side, ``b1..bt`` the right side.
        centers: Minor-vertex label to the centre of its star.
    """

    branch_sets: dict[str, frozenset[int]]
    centers: dict[str, int] = field(default_factory=dict)

    def vertices(self) -> frozenset[int]:
        """Return the union of all branch sets."""
        out: set[int] = set()
        for part in self.branch_sets.values():
            out |= part
        return frozenset(out)


@dataclass(frozen=True)
class PseudoForest:
    """Directed subgraph with out-degree at most one.

    Attributes:
        arcs: Each vertex's chosen out-neighbor, or None.
        weight_retained: Total weight of the distinct edges underlying the arcs.
    """

    arcs: dict[int, Optional[int]]
    weight_retained: Fraction

    def children(self) -> dict[int, list[int]]:
        """Map each vertex to the sorted list of vertices pointing at it."""
        out: dict[int, list[int]] = {v: [] for v in self.arcs}
        for v in sorted(self.arcs):
            parent = self.arcs[v]
            if parent is not None:
                out[parent].append(v)
        return out


# ---------------------------------------------------------------------------
# Runs and results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunTranscript:
    """Outcome of running a node program on the round engine.

    Attributes:
        outputs: Each vertex's output value.
        rounds_used: Communication rounds executed.
        messages_sent: Total outbox entries over all rounds.
    """

    outputs: dict[int, Any]
    rounds_used: int
    messages_sent: int


@dataclass(frozen=True)
class MdsResult:
    """A dominating set with its per-phase breakdown.

    Attributes:
        dominating_set: Union of the three parts.
        phase1_set: Vertices whose neighborhood cannot be covered cheaply (D).
        preprocessing_set: Vertices of absorbed canonical K3,3 subgraphs.
        phase2_set: Elected dominators (D').
        rounds_used: LOCAL rounds the algorithm needs (or used, when simulated).
        algorithm: Name of the producing algorithm.
    """

    dominating_set: frozenset[int]
    phase1_set: frozenset[int]
    preprocessing_set: frozenset[int]
    phase2_set: frozenset[int]
    rounds_used: int
    algorithm: str = ""

    @classmethod
    def from_parts(
        cls,
        phase1: Any,
        preprocessing: Any,
        phase2: Any,
        rounds_used: int,
        algorithm: str = "",
    ) -> MdsResult:
        """Build a result whose dominating set is the union of the parts."""
        p1, pre, p2 = frozenset(phase1), frozenset(preprocessing), frozenset(phase2)
        return cls(
            dominating_set=p1 | pre | p2,
            phase1_set=p1,
            preprocessing_set=pre,
            phase2_set=p2,
            rounds_used=rounds_used,
            algorithm=algorithm,
        )

    def same_sets(self, other: MdsResult) -> bool:
        """True when both results agree on every part (rounds may differ)."""
        return (
            self.dominating_set == other.dominating_set
            and self.phase1_set == other.phase1_set
            and self.preprocessing_set == other.preprocessing_set
            and self.phase2_set == other.phase2_set
        )
