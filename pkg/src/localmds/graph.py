"""graph — immutable weighted graphs, neighborhoods, star contraction, density.

:class:`Graph` wraps a frozen :mod:`networkx` graph whose vertices are
non-negative integers.  The integer order is the identifier order used by
every tie-break in the package.  Vertex and edge weights are exact
:class:`fractions.Fraction` values defaulting to 1, so weight inequalities are
checked without tolerance.

Graphs never change after construction: contractions, induced subgraphs and
vertex deletions all build new graphs.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Union

import networkx as nx

from localmds.exceptions import GraphError, PartitionError
from localmds.lib import config
from localmds.lib.models import DensityBound, GraphClass, StarPartition

Weight = Union[int, Fraction, str]
EdgeKey = tuple[int, int]

ONE = Fraction(1)


def edge_key(u: int, v: int) -> EdgeKey:
    """Return the canonical (smaller, larger) key of an undirected edge."""
    return (u, v) if u < v else (v, u)


def _check_id(v: Any) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise GraphError("bad_vertex_id", vertex=v)
    return v


def _check_weight(w: Weight, item: str) -> Fraction:
    value = Fraction(w)
    if value <= 0:
        raise GraphError("non_positive_weight", weight=value, item=item)
    return value


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


class Graph:
    """A finite simple undirected graph with positive rational weights.

    Args:
        vertices: Vertex ids (non-negative integers). Duplicates are merged.
        edges: Vertex pairs. Each unordered pair may appear once.
        vertex_weights: Optional weights per vertex; missing entries are 1.
        edge_weights: Optional weights keyed by vertex pair in either order.
        meta: Optional class metadata attached by generators. Not part of
            equality or hashing.

    Raises:
        GraphError: On a bad id, a self-loop, a parallel edge, an endpoint
            outside the vertex set or a non-positive weight.
    """

    __slots__ = ("_nx", "_adj", "_vertices", "_edges", "_key", "meta")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]] = (),
        *,
        vertex_weights: Optional[Mapping[int, Weight]] = None,
        edge_weights: Optional[Mapping[tuple[int, int], Weight]] = None,
        meta: Optional[GraphClass] = None,
    ) -> None:
        nxg = nx.Graph()
        for v in vertices:
            nxg.add_node(_check_id(v), weight=ONE)
        for u, v in edges:
            _check_id(u)
            _check_id(v)
            if u == v:
                raise GraphError("self_loop", vertex=u)
            if u not in nxg or v not in nxg:
                raise GraphError("foreign_endpoint", u=u, v=v)
            if nxg.has_edge(u, v):
                raise GraphError("parallel_edge", u=u, v=v)
            nxg.add_edge(u, v, weight=ONE)
        for v, w in (vertex_weights or {}).items():
            if v not in nxg:
                raise GraphError("unknown_vertex", vertex=v)
            nxg.nodes[v]["weight"] = _check_weight(w, f"vertex {v}")
        for (u, v), w in (edge_weights or {}).items():
            if not nxg.has_edge(u, v):
                raise GraphError("foreign_endpoint", u=u, v=v)
            nxg.edges[u, v]["weight"] = _check_weight(w, f"edge {u}-{v}")

        self._nx = nx.freeze(nxg)
        self._vertices = tuple(sorted(nxg.nodes))
        self._adj = {v: frozenset(nxg.adj[v]) for v in self._vertices}
        self._edges = tuple(sorted(edge_key(u, v) for u, v in nxg.edges))
        self._key = (
            self._vertices,
            tuple(nxg.nodes[v]["weight"] for v in self._vertices),
            tuple((u, v, nxg.edges[u, v]["weight"]) for u, v in self._edges),
        )
        self.meta = meta

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kwargs: Any) -> Graph:
        """Build a graph on vertices ``0..n-1``."""
        return cls(range(n), edges, **kwargs)

    @classmethod
    def from_networkx(cls, nxg: nx.Graph, meta: Optional[GraphClass] = None) -> Graph:
        """Build from a networkx graph, reading optional ``weight`` attributes."""
        vw = {v: d["weight"] for v, d in nxg.nodes(data=True) if "weight" in d}
        ew = {(u, v): d["weight"] for u, v, d in nxg.edges(data=True) if "weight" in d}
        return cls(nxg.nodes, nxg.edges, vertex_weights=vw, edge_weights=ew, meta=meta)

    def with_meta(self, meta: Optional[GraphClass]) -> Graph:
        """Return an equal graph carrying different metadata."""
        clone = object.__new__(Graph)
        for slot in ("_nx", "_adj", "_vertices", "_edges", "_key"):
            object.__setattr__(clone, slot, getattr(self, slot))
        clone.meta = meta
        return clone

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertex ids in increasing order."""
        return self._vertices

    @property
    def edges(self) -> tuple[EdgeKey, ...]:
        """Edges as sorted (smaller, larger) pairs."""
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def nx_graph(self) -> nx.Graph:
        """The underlying frozen networkx graph."""
        return self._nx

    def adjacency(self) -> dict[int, frozenset[int]]:
        """Vertex to neighbor-set mapping (shared, do not mutate)."""
        return self._adj

    def _require(self, v: int) -> None:
        if v not in self._adj:
            raise GraphError("unknown_vertex", vertex=v)

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        """Open neighborhood N(v)."""
        self._require(v)
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """Closed neighborhood N[v]."""
        self._require(v)
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        self._require(v)
        return len(self._adj[v])

    def weight(self, v: int) -> Fraction:
        """Vertex weight of v."""
        self._require(v)
        return self._nx.nodes[v]["weight"]

    def edge_weight(self, u: int, v: int) -> Fraction:
        """Weight of edge uv."""
        if not self.has_edge(u, v):
            raise GraphError("foreign_endpoint", u=u, v=v)
        return self._nx.edges[u, v]["weight"]

    def total_edge_weight(self) -> Fraction:
        return sum((w for _, _, w in self._key[2]), Fraction(0))

    def vertex_weights(self) -> dict[int, Fraction]:
        return dict(zip(self._vertices, self._key[1]))

    def edge_weights(self) -> dict[EdgeKey, Fraction]:
        return {(u, v): w for u, v, w in self._key[2]}

    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self._key[1]) and all(w == 1 for *_, w in self._key[2])

    # -- neighborhoods and subgraphs ---------------------------------------

    def ball(self, v: int, r: int) -> frozenset[int]:
        """Return N^r[v], the vertices at distance at most r from v."""
        self._require(v)
        if r < 0:
            raise GraphError("negative_parameter", name="r", minimum=0, value=r)
        return frozenset(nx.single_source_shortest_path_length(self._nx, v, cutoff=r))

    def set_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """Return N[S], the closed neighborhood of a vertex set."""
        out: set[int] = set()
        for v in vertices:
            out |= self.closed_neighborhood(v)
        return frozenset(out)

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph G[S], weights and metadata-free."""
        keep = set(vertices)
        for v in keep:
            self._require(v)
        sub = self._nx.subgraph(keep)
        return Graph(
            keep,
            sub.edges,
            vertex_weights={v: sub.nodes[v]["weight"] for v in keep},
            edge_weights={(u, v): d["weight"] for u, v, d in sub.edges(data=True)},
        )

    def remove_vertices(self, vertices: Iterable[int]) -> Graph:
        """Return G - S. Unknown vertices are ignored."""
        drop = set(vertices)
        return self.induced(v for v in self._vertices if v not in drop)

    def with_unit_edge_weights(self) -> Graph:
        """Same graph with every edge weight reset to 1 (vertex weights kept)."""
        return Graph(self._vertices, self._edges, vertex_weights=self.vertex_weights())

    def components(self) -> list[frozenset[int]]:
        """Connected components sorted by smallest vertex."""
        return sorted((frozenset(c) for c in nx.connected_components(self._nx)), key=min)


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def ball(g: Graph, v: int, r: int) -> frozenset[int]:
    """Return N^r[v] in g."""
    return g.ball(v, r)


def contract_stars(
    g: Graph, stars: Iterable[tuple[int, Iterable[int]]]
) -> StarPartition:
    """Contract a partition of V(g) into stars.

    Each quotient vertex is identified by its star's centre.  Its weight is
    the sum of the member weights; the weight of a quotient edge is the sum
    of the weights of the g-edges crossing the two stars.

    Args:
        g: The graph to contract.
        stars: (center, leaves) pairs.

    Returns:
        The StarPartition with its quotient graph.

    Raises:
        PartitionError: On an unknown vertex, overlapping stars, a leaf not
            adjacent to its centre, or vertices covered by no star.
    """
    owner: dict[int, int] = {}
    normalized: list[tuple[int, frozenset[int]]] = []
    for center, leaves in stars:
        leaf_set = frozenset(leaves)
        for v in (center, *sorted(leaf_set)):
            if v not in g:
                raise PartitionError("partition_unknown", center=center, vertex=v)
            if v in owner:
                raise PartitionError("partition_overlap", center=center, vertex=v)
            owner[v] = center
        for leaf in sorted(leaf_set):
            if leaf == center or not g.has_edge(center, leaf):
                raise PartitionError("partition_non_adjacent", center=center, leaf=leaf)
        normalized.append((center, leaf_set))

    missing = [v for v in g.vertices if v not in owner]
    if missing:
        raise PartitionError("partition_non_cover", vertices=missing)

    vertex_weights = {
        center: g.weight(center) + sum((g.weight(x) for x in leaves), Fraction(0))
        for center, leaves in normalized
    }
    crossing: dict[EdgeKey, Fraction] = {}
    for u, v in g.edges:
        a, b = owner[u], owner[v]
        if a != b:
            key = edge_key(a, b)
            crossing[key] = crossing.get(key, Fraction(0)) + g.edge_weight(u, v)

    quotient = Graph(
        vertex_weights,
        crossing,
        vertex_weights=vertex_weights,
        edge_weights=crossing,
    )
    return StarPartition(stars=tuple(normalized), quotient=quotient)


def edge_density(g: Graph) -> Fraction:
    """Return |E|/|V| exactly.

    Raises:
        GraphError: If g has no vertices.
    """
    if g.n == 0:
        raise GraphError("empty_graph", operation="edge_density")
    return Fraction(g.m, g.n)


def _denser_than(g: Graph, p: int, q: int) -> bool:
    """True iff some subgraph has density strictly above p/q.

    Max-closure network: source to each edge-node with capacity q, edge-node
    to both endpoints uncapacitated, vertex to sink with capacity p.  The
    maximum closure q*e(S) - p*|S| is positive iff the min cut is below q*m.
    """
    net = nx.DiGraph()
    net.add_nodes_from(("s", "t"))
    for u, v in g.edges:
        node = ("e", u, v)
        net.add_edge("s", node, capacity=q)
        net.add_edge(node, ("v", u))
        net.add_edge(node, ("v", v))
    for v in g.vertices:
        net.add_edge(("v", v), "t", capacity=p)
    cut_value, _ = nx.minimum_cut(net, "s", "t")
    return cut_value < q * g.m


def degeneracy_bound(g: Graph, cap: Optional[int] = None) -> DensityBound:
    """Maximum subgraph density max |E(H)|/|V(H)| over subgraphs H.

    Exact (parametric min-cut over the finite candidate set p/q) when
    n is within ``limits.exact_density_cap``; otherwise the largest core
    number, flagged ``exact=False``.

    Raises:
        GraphError: If g has no vertices.
    """
    if g.n == 0:
        raise GraphError("empty_graph", operation="degeneracy_bound")
    limit = config.cap("exact_density_cap", cap)
    if g.n > limit:
        cores = nx.core_number(g.nx_graph)
        return DensityBound(Fraction(max(cores.values(), default=0)), exact=False)

    candidates = sorted({Fraction(p, q) for q in range(1, g.n + 1) for p in range(g.m + 1)})
    # Predicate "denser than x" is true then false along the sorted candidates.
    idx = bisect.bisect_left(
        candidates, True, key=lambda x: not _denser_than(g, x.numerator, x.denominator)
    )
    return DensityBound(candidates[idx], exact=True)
