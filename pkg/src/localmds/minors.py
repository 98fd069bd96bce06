"""minors — depth-1 K_{3,t} minor search, canonical K3,3 subgraphs, genus formulas.

A depth-1 minor model of K_{3,t} is a family of 3 + t vertex-disjoint stars
(left stars ``a1..a3``, right stars ``b1..bt``) such that every left star is
joined to every right star by at least one edge.  The search fixes the star
centres first and then realizes the 3t connections one pair at a time,
recruiting free neighbors of a centre as leaves only when a connection needs
them.

Only the 2-core of the input matters: a vertex of degree at most one can
always be dropped from a model, because every minor vertex of K_{3,t} has
degree at least three.

The canonical K3,3 subgraph K_v of a vertex is the smallest subgraph, in the
order (sorted vertex ids, then sorted edge list), among the minimal subgraphs
of G[N^6[v]] that contain v and have K3,3 as a depth-1 minor.  A minimal
such subgraph is exactly a model's star edges plus one designated edge per
pair, which bounds it by 24 vertices, and it is a subdivision of K3,3 whose
vertices all have degree two or three.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import isqrt
from typing import Iterator, Optional, Sequence

import networkx as nx

from localmds.exceptions import GraphError, SearchRefusedError
from localmds.graph import Graph, edge_key
from localmds.lib import config
from localmds.lib.models import MinorModel

Adjacency = dict[int, frozenset[int]]
_LEFT = 3


def _adjacency(nxg: nx.Graph) -> Adjacency:
    return {v: frozenset(nxg.adj[v]) for v in nxg.nodes}


def _core(nxg: nx.Graph) -> Adjacency:
    return _adjacency(nx.k_core(nxg, 2))


def left_labels() -> list[str]:
    return [f"a{i}" for i in range(1, _LEFT + 1)]


def right_labels(t: int) -> list[str]:
    return [f"b{j}" for j in range(1, t + 1)]


# ---------------------------------------------------------------------------
# Model search
# ---------------------------------------------------------------------------


class _ModelSearch:
    """Backtracking over centre choices and pairwise connections.

    In designated mode every left/right pair receives its own edge even when
    the stars already touch, and ``required`` vertices must end up inside the
    model; the yielded edge sets are then candidate minimal subgraphs.  A
    minimal subgraph has maximum degree three, so designated branches that
    push a vertex past it are cut.
    """

    def __init__(
        self,
        adj: Adjacency,
        t: int,
        designated: bool = False,
        required: frozenset[int] = frozenset(),
    ) -> None:
        self.adj = adj
        self.t = t
        self.designated = designated
        self.required = required
        self.order = sorted(adj)
        nxg = nx.Graph()
        nxg.add_nodes_from(self.order)
        nxg.add_edges_from((u, w) for u in adj for w in adj[u] if u < w)
        self.near = {
            v: frozenset(nx.single_source_shortest_path_length(nxg, v, cutoff=3))
            for v in self.order
        }
        self.closed = {v: adj[v] | {v} for v in self.order}
        self.pairs = [(i, _LEFT + j) for i in range(_LEFT) for j in range(t)]
        self.owner: dict[int, int] = {}
        self.members: list[set[int]] = []
        self.centers: list[int] = []
        self.chosen_edges: list[tuple[int, int]] = []
        self.degree: dict[int, int] = {}

    # -- centres ------------------------------------------------------------

    def _center_choices(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        for lefts in combinations(self.order, _LEFT):
            common = self.near[lefts[0]] & self.near[lefts[1]] & self.near[lefts[2]]
            pool = sorted(common.difference(lefts))
            if self.t == _LEFT:
                pool = [b for b in pool if b > lefts[0]]
            if len(pool) < self.t:
                continue
            reached = self.closed[lefts[0]] | self.closed[lefts[1]] | self.closed[lefts[2]]
            rest = self.required - reached
            for rights in combinations(pool, self.t):
                if rest and not rest <= frozenset().union(*(self.closed[b] for b in rights)):
                    continue
                yield lefts, rights

    # -- connections --------------------------------------------------------

    def _touching(self, si: int, sj: int) -> bool:
        other = self.members[sj]
        return any(self.adj[x] & other for x in self.members[si])

    def _usable(self, x: int, star: int) -> bool:
        owner = self.owner.get(x)
        if owner is not None:
            return owner == star
        return x in self.adj[self.centers[star]]

    def _candidates(self, star: int) -> list[int]:
        center = self.centers[star]
        free = [x for x in self.adj[center] if x not in self.owner]
        return sorted(self.members[star]) + sorted(free)

    def _claim(self, x: int, star: int) -> bool:
        if x in self.owner:
            return False
        self.owner[x] = star
        self.members[star].add(x)
        return True

    def _release(self, x: int, star: int) -> None:
        del self.owner[x]
        self.members[star].discard(x)

    def _room(self, k: int) -> bool:
        missing = sum(1 for x in self.required if x not in self.owner)
        return missing <= 2 * (len(self.pairs) - k)

    def _bump(self, vertices: list[int], step: int) -> bool:
        for x in vertices:
            self.degree[x] = self.degree.get(x, 0) + step
        return all(self.degree[x] <= 3 for x in vertices)

    def _touched(self, x: int, y: int, si: int, sj: int, new_x: bool, new_y: bool) -> list[int]:
        touched = [x, y]
        if new_x:
            touched += [x, self.centers[si]]
        if new_y:
            touched += [y, self.centers[sj]]
        return touched

    def _connect(self, k: int) -> Iterator[None]:
        if k == len(self.pairs):
            if self.required <= self.owner.keys():
                yield None
            return
        si, sj = self.pairs[k]
        if not self.designated and self._touching(si, sj):
            yield from self._connect(k + 1)
            return
        if self.designated and not self._room(k):
            return
        for x in self._candidates(si):
            if not self._usable(x, si):
                continue
            for y in sorted(self.adj[x]):
                if not self._usable(y, sj):
                    continue
                new_x = self._claim(x, si)
                new_y = self._claim(y, sj)
                self.chosen_edges.append((x, y))
                touched = self._touched(x, y, si, sj, new_x, new_y) if self.designated else []
                if self._bump(touched, 1):
                    yield from self._connect(k + 1)
                self._bump(touched, -1)
                self.chosen_edges.pop()
                if new_y:
                    self._release(y, sj)
                if new_x:
                    self._release(x, si)

    def models(self) -> Iterator[tuple[list[int], list[frozenset[int]], list[tuple[int, int]]]]:
        """Yield (centers, branch sets, designated edges) for each model found."""
        for lefts, rights in self._center_choices():
            self.centers = [*lefts, *rights]
            self.members = [{c} for c in self.centers]
            self.owner = {c: i for i, c in enumerate(self.centers)}
            self.chosen_edges = []
            self.degree = {}
            for _ in self._connect(0):
                yield (
                    list(self.centers),
                    [frozenset(s) for s in self.members],
                    list(self.chosen_edges),
                )


def _to_model(t: int, centers: list[int], sets: list[frozenset[int]]) -> MinorModel:
    labels = left_labels() + right_labels(t)
    return MinorModel(
        branch_sets=dict(zip(labels, sets)),
        centers=dict(zip(labels, centers)),
    )


def find_k3t_depth1_minor(g: Graph, t: int, cap: Optional[int] = None) -> Optional[MinorModel]:
    """Search for K_{3,t} as a depth-1 minor of g.

    Args:
        g: Input graph.
        t: Size of the right side, at least 3.
        cap: Vertex cap; defaults to ``limits.minor_search_cap``.

    Returns:
        A minor model, or None when g has no such minor.

    Raises:
        GraphError: If t < 3.
        SearchRefusedError: If g has more vertices than the cap.
    """
    if t < _LEFT:
        raise GraphError("negative_parameter", name="t", minimum=_LEFT, value=t)
    limit = config.cap("minor_search_cap", cap)
    if g.n > limit:
        raise SearchRefusedError("find_k3t_depth1_minor", g.n, limit)
    adj = _core(g.nx_graph)
    if len(adj) < _LEFT + t:
        return None
    for centers, sets, _ in _ModelSearch(adj, t).models():
        return _to_model(t, centers, sets)
    return None


def validate_minor_model(
    g: Graph, model: MinorModel, left: Sequence[str], right: Sequence[str]
) -> list[str]:
    """Check a claimed model of K_{|left|,|right|} and return error strings.

    Checks branch-set membership in g, pairwise disjointness, star shape of
    every branch set and an edge between every left and right branch set.
    """
    errors: list[str] = []
    sets = model.branch_sets
    for label in [*left, *right]:
        if label not in sets or not sets[label]:
            errors.append(f"branch set {label} is missing or empty")
    if errors:
        return errors
    seen: dict[int, str] = {}
    for label in [*left, *right]:
        part = sets[label]
        outside = sorted(v for v in part if v not in g)
        if outside:
            errors.append(f"branch set {label} has vertices outside the graph: {outside}")
            continue
        for v in sorted(part):
            if v in seen:
                errors.append(f"vertex {v} is in both {seen[v]} and {label}")
            seen[v] = label
        centers = [model.centers[label]] if label in model.centers else sorted(part)
        if not any(c in part and part - {c} <= g.neighbors(c) for c in centers):
            errors.append(f"branch set {label} is not a star")
    if errors:
        return errors
    for a in left:
        for b in right:
            if not any(g.neighbors(x) & sets[b] for x in sets[a]):
                errors.append(f"no edge between {a} and {b}")
    return errors


# ---------------------------------------------------------------------------
# Canonical K3,3 subgraph
# ---------------------------------------------------------------------------


EdgeSet = frozenset[tuple[int, int]]


def _vertices(edges: EdgeSet) -> frozenset[int]:
    return frozenset(x for e in edges for x in e)


def is_k33_subdivision(edges: EdgeSet) -> bool:
    """True when the edges form a subdivision of K3,3.

    The candidates yielded by the designated search are exactly the minimal
    subgraphs with a depth-1 K3,3 minor when they pass this test: deleting
    an edge of a subdivision leaves a planar graph.
    """
    nxg = nx.Graph(list(edges))
    degree = dict(nxg.degree)
    if any(d not in (2, 3) for d in degree.values()) or not nx.is_connected(nxg):
        return False
    branch = [u for u, d in degree.items() if d == 3]
    if len(branch) != 2 * _LEFT:
        return False
    suppressed: set[tuple[int, int]] = set()
    for b in branch:
        for first in nxg.adj[b]:
            prev, cur = b, first
            while degree[cur] == 2:
                prev, cur = cur, next(w for w in nxg.adj[cur] if w != prev)
            if cur == b:
                return False
            suppressed.add(edge_key(b, cur))
    return len(suppressed) == _LEFT * _LEFT and nx.is_bipartite(nx.Graph(list(suppressed)))


def _minimal_subgraphs(adj: Adjacency, required: frozenset[int]) -> Iterator[EdgeSet]:
    seen: set[EdgeSet] = set()
    search = _ModelSearch(adj, _LEFT, designated=True, required=required)
    for centers, sets, chosen in search.models():
        star_edges = {edge_key(c, x) for c, part in zip(centers, sets) for x in part if x != c}
        k = frozenset(star_edges | {edge_key(x, y) for x, y in chosen})
        if k in seen:
            continue
        seen.add(k)
        if is_k33_subdivision(k):
            yield k


@lru_cache(maxsize=65536)
def _witness(edges: EdgeSet, required: frozenset[int], allowed: frozenset[int]) -> Optional[EdgeSet]:
    """First minimal subgraph of the edge set with required <= V <= allowed.

    A subdivision of K3,3 is 2-connected, so only nonplanar blocks holding
    every required vertex are searched.
    """
    sub = nx.Graph([e for e in edges if e[0] in allowed and e[1] in allowed])
    if not required.issubset(sub.nodes):
        return None
    blocks = sorted(
        sorted(b) for b in nx.biconnected_components(sub) if len(b) >= 2 * _LEFT and required <= b
    )
    for block in blocks:
        part = sub.subgraph(block)
        if nx.check_planarity(part)[0]:
            continue
        found = next(_minimal_subgraphs(_adjacency(part), required), None)
        if found is not None:
            return found
    return None


@lru_cache(maxsize=4096)
def _lexicographic_subgraph(edges: EdgeSet, v: int) -> Optional[EdgeSet]:
    """Minimal subgraph through v with the smallest sorted vertex sequence.

    Vertices are decided in id order.  A found witness settles every id up
    to its next vertex, so only the ids in between are queried; each query
    admits the chosen prefix and the ids from the candidate on.
    """
    order = sorted(_vertices(edges))
    witness = _witness(edges, frozenset({v}), frozenset(order))
    if witness is None:
        return None
    prefix: list[int] = []
    while True:
        chosen = frozenset(prefix)
        if v in chosen and len(prefix) >= 2 * _LEFT:
            if _vertices(witness) == chosen:
                break
            if _witness(edges, chosen, chosen) is not None:
                break
        last = prefix[-1] if prefix else -1
        nxt = min(_vertices(witness) - chosen)
        for x in order:
            if x <= last:
                continue
            if x >= nxt:
                break
            found = _witness(edges, chosen | {x, v}, chosen | {u for u in order if u >= x})
            if found is not None:
                nxt, witness = x, found
                break
        prefix.append(nxt)
    exact = frozenset(prefix)
    sub = nx.Graph([e for e in edges if e[0] in exact and e[1] in exact])
    return min(_minimal_subgraphs(_adjacency(sub), exact), key=sorted)


def canonical_k33_subgraph(g: Graph, v: int, cap: Optional[int] = None) -> Optional[Graph]:
    """Return the canonical K3,3 subgraph K_v of v, or None.

    Results are memoised on the 2-core of the ball and v, so vertices with
    identical balls share every intermediate search.

    Args:
        g: Input graph.
        v: The vertex the subgraph must contain.
        cap: Ball-size cap; defaults to ``limits.canonical_ball_cap``.

    Raises:
        GraphError: If v is not a vertex of g.
        SearchRefusedError: If N^6[v] is larger than the cap.
    """
    radius = config.get_int("limits.canonical_radius")
    ball = g.ball(v, radius)
    limit = config.cap("canonical_ball_cap", cap)
    if len(ball) > limit:
        raise SearchRefusedError("canonical_k33_subgraph", len(ball), limit)
    core = nx.k_core(g.induced(ball).nx_graph, 2)
    if v not in core or core.number_of_nodes() < 2 * _LEFT:
        return None
    edges = _lexicographic_subgraph(frozenset(edge_key(x, y) for x, y in core.edges), v)
    if edges is None:
        return None
    return Graph(sorted(_vertices(edges)), sorted(edges))


# ---------------------------------------------------------------------------
# Genus formulas
# ---------------------------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def genus_complete_bipartite(m: int, n: int, orientable: bool = True) -> int:
    """Genus of K_{m,n}: ceil((m-2)(n-2)/4), or /2 for the non-orientable genus."""
    for name, value in (("m", m), ("n", n)):
        if value < 2:
            raise GraphError("negative_parameter", name=name, minimum=2, value=value)
    return _ceil_div((m - 2) * (n - 2), 4 if orientable else 2)


def excluded_k3t_for_genus(genus: int, orientable: bool = True) -> int:
    """A t such that graphs of this genus exclude K_{3,t}: 4g+3, or 2g+3 non-orientably."""
    if genus < 0:
        raise GraphError("negative_parameter", name="genus", minimum=0, value=genus)
    return (4 if orientable else 2) * genus + 3


def euler_edge_bound(n: int, genus: int, orientable: bool = True) -> int:
    """Maximum edge count of a simple n-vertex graph of the given genus (n >= 3)."""
    if n < 3:
        raise GraphError("negative_parameter", name="n", minimum=3, value=n)
    if genus < 0:
        raise GraphError("negative_parameter", name="genus", minimum=0, value=genus)
    if orientable:
        return 3 * n + 6 * genus - 6
    return 3 * n + 3 * genus - 6


def genus_density_bound(genus: int) -> int:
    """Integer density bound for genus-g graphs: ceil(5*sqrt(g)), and 3 when planar."""
    if genus < 0:
        raise GraphError("negative_parameter", name="genus", minimum=0, value=genus)
    if genus == 0:
        return config.get_int("lenzen.planar_c")
    factor = config.get_int("lenzen.genus_c_factor")
    target = factor * factor * genus
    root = isqrt(target)
    return root if root * root == target else root + 1


def max_disjoint_k33_models(genus: int, orientable: bool = True) -> int:
    """Upper bound on vertex-disjoint K3,3 models in a genus-g graph."""
    if genus < 0:
        raise GraphError("negative_parameter", name="genus", minimum=0, value=genus)
    return genus if orientable else 2 * genus
