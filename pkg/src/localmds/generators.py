"""generators — seeded graph families tagged with their known class.

Every generator returns a :class:`~localmds.graph.Graph` with ids ``0..n-1``
and a :class:`~localmds.lib.models.GraphClass` describing what is known by
construction: planarity, a genus bound, an arboricity bound, the depth-1
minor density bound ``c`` and a ``t`` such that K_{3,t} is excluded as a
depth-1 minor.  Nothing here tests planarity or computes genus.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

import networkx as nx

from localmds.exceptions import GraphError
from localmds.graph import Graph
from localmds.lib import config
from localmds.lib.models import GraphClass
from localmds.minors import excluded_k3t_for_genus, genus_complete_bipartite, genus_density_bound


def _require(family: str, condition: bool, detail: str) -> None:
    if not condition:
        raise GraphError("bad_size", family=family, detail=detail)


def _tag(
    family: str,
    *,
    planar: bool,
    genus: int,
    arboricity: int,
    c: Optional[int],
    t: Optional[int],
    **params: object,
) -> GraphClass:
    return GraphClass(
        family=family,
        planar=planar,
        genus_upper_bound=genus,
        arboricity_upper_bound=arboricity,
        density_upper_bound=None if c is None else Fraction(c),
        k3t_exclusion=t,
        params=tuple(sorted((k, str(v)) for k, v in params.items())),
    )


def _planar_tag(family: str, arboricity: int, c: int = 3, **params: object) -> GraphClass:
    return _tag(family, planar=True, genus=0, arboricity=arboricity, c=c, t=3, **params)


def _relabelled(nxg: nx.Graph, meta: GraphClass, order: Optional[Sequence] = None) -> Graph:
    nodes = list(order) if order is not None else sorted(nxg.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    return Graph(range(len(nodes)), ((index[u], index[v]) for u, v in nxg.edges), meta=meta)


# ---------------------------------------------------------------------------
# Deterministic families
# ---------------------------------------------------------------------------


def grid(w: int, h: int) -> Graph:
    """w-by-h grid; vertex ``r*w + c`` sits in row r, column c."""
    _require("grid", w >= 1 and h >= 1, f"w={w}, h={h} must be >= 1")
    nxg = nx.grid_2d_graph(h, w)
    order = [(r, c) for r in range(h) for c in range(w)]
    return _relabelled(nxg, _planar_tag("grid", 2, w=w, h=h), order)


def torus_grid(w: int, h: int) -> Graph:
    """Cartesian product C_h x C_w, embedded on the torus."""
    _require("torus", w >= 3 and h >= 3, f"w={w}, h={h} must be >= 3")
    nxg = nx.grid_2d_graph(h, w, periodic=True)
    order = [(r, c) for r in range(h) for c in range(w)]
    meta = _tag(
        "torus",
        planar=False,
        genus=1,
        arboricity=3,
        c=genus_density_bound(1),
        t=excluded_k3t_for_genus(1, True),
        w=w,
        h=h,
    )
    return _relabelled(nxg, meta, order)


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with the left side on ids ``0..m-1``."""
    _require("bipartite", m >= 1 and n >= 1, f"m={m}, n={n} must be >= 1")
    nxg = nx.complete_bipartite_graph(m, n)
    small = min(m, n)
    arboricity = -(-(m * n) // (m + n - 1))
    if small <= 2:
        meta = _planar_tag("bipartite", arboricity, m=m, n=n)
    else:
        meta = _tag(
            "bipartite",
            planar=False,
            genus=genus_complete_bipartite(m, n, True),
            arboricity=arboricity,
            c=None,
            t=None,
            m=m,
            n=n,
        )
    return _relabelled(nxg, meta)


def subdivided_clique(n: int, s: int = 3) -> Graph:
    """K_n with every edge replaced by a path through s new vertices.

    Branch vertices are ``0..n-1``; the internal vertices of the path for the
    pair (i, j) follow in pair order.
    """
    _require("subdivided-clique", n >= 1 and s >= 0, f"n={n}, s={s}")
    edges: list[tuple[int, int]] = []
    nxt = n
    for i, j in combinations(range(n), 2):
        path = [i, *range(nxt, nxt + s), j]
        nxt += s
        edges += list(zip(path, path[1:]))
    genus = -(-((n - 3) * (n - 4)) // 12) if n >= 3 else 0
    if s >= 3:
        c, t, arboricity = 2, 3, 2
    else:
        c, t, arboricity = None, None, 2 if s >= 1 else -(-n // 2)
    meta = _tag(
        "subdivided-clique",
        planar=n <= 4,
        genus=genus,
        arboricity=max(arboricity, 1),
        c=c,
        t=t,
        n=n,
        s=s,
    )
    return Graph(range(nxt), edges, meta=meta)


def path(n: int) -> Graph:
    _require("path", n >= 1, f"n={n} must be >= 1")
    return _relabelled(nx.path_graph(n), _planar_tag("path", 1, c=1, n=n))


def cycle(n: int) -> Graph:
    _require("cycle", n >= 3, f"n={n} must be >= 3")
    return _relabelled(nx.cycle_graph(n), _planar_tag("cycle", 2, c=1, n=n))


def star(n: int) -> Graph:
    """K_{1,n}: centre 0 and leaves ``1..n``."""
    _require("star", n >= 1, f"n={n} must be >= 1")
    return _relabelled(nx.star_graph(n), _planar_tag("star", 1, c=1, n=n))


# ---------------------------------------------------------------------------
# Seeded families
# ---------------------------------------------------------------------------


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree on n vertices from a seeded Pruefer sequence."""
    _require("random-tree", n >= 1, f"n={n} must be >= 1")
    meta = _planar_tag("random-tree", 1, c=1, n=n, seed=seed)
    if n <= 2:
        return Graph(range(n), [(0, 1)] if n == 2 else [], meta=meta)
    rng = random.Random(seed)
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    return _relabelled(nx.from_prufer_sequence(sequence), meta)


def random_planar(n: int, seed: int = 0, drop_fraction: Fraction = Fraction(0)) -> Graph:
    """Seeded triangulation by repeated face splitting.

    Starts from the triangle 0-1-2; vertex k is inserted into a uniformly
    chosen inner face and joined to its three corners.  The result is
    maximal planar (3n-6 edges); ``drop_fraction`` then deletes that share
    of the edges, chosen with the same generator.
    """
    _require("random-planar", n >= 1, f"n={n} must be >= 1")
    _require("random-planar", 0 <= drop_fraction < 1, f"drop_fraction={drop_fraction}")
    rng = random.Random(seed)
    meta = _planar_tag("random-planar", 3, n=n, seed=seed, drop=drop_fraction)
    if n < 3:
        return Graph(range(n), [(0, 1)] if n == 2 else [], meta=meta)
    edges = {(0, 1), (0, 2), (1, 2)}
    faces = [(0, 1, 2)]
    for k in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces += [(a, b, k), (b, c, k), (a, c, k)]
        edges |= {(a, k), (b, k), (c, k)}
    ordered = sorted(edges)
    drop = int(drop_fraction * len(ordered))
    removed = set(rng.sample(ordered, drop)) if drop else set()
    return Graph(range(n), [e for e in ordered if e not in removed], meta=meta)


# ---------------------------------------------------------------------------
# Family dispatch
# ---------------------------------------------------------------------------


def _square(fn: Callable[[int, int], Graph]) -> Callable[[Sequence[int], int], Graph]:
    return lambda sizes, seed: fn(sizes[0], sizes[1] if len(sizes) > 1 else sizes[0])


FAMILIES: dict[str, Callable[[Sequence[int], int], Graph]] = {
    "grid": _square(grid),
    "torus": _square(torus_grid),
    "bipartite": _square(complete_bipartite),
    "subdivided-clique": lambda sizes, seed: subdivided_clique(
        sizes[0], sizes[1] if len(sizes) > 1 else 3
    ),
    "random-planar": lambda sizes, seed: random_planar(sizes[0], seed),
    "path": lambda sizes, seed: path(sizes[0]),
    "cycle": lambda sizes, seed: cycle(sizes[0]),
    "star": lambda sizes, seed: star(sizes[0]),
    "random-tree": lambda sizes, seed: random_tree(sizes[0], seed),
}


def build(family: str, sizes: Sequence[int], seed: Optional[int] = None) -> Graph:
    """Build a family member from one or two size parameters.

    Grid-like families take (w, h) and default h to w.  Seeded families use
    ``seed`` or the configured default seed.

    Raises:
        GraphError: On an unknown family or invalid sizes.
    """
    if family not in FAMILIES:
        raise GraphError("unknown_family", name=family)
    _require(family, len(sizes) in (1, 2), f"expected 1 or 2 sizes, got {len(sizes)}")
    chosen = config.get_int("defaults.seed") if seed is None else seed
    return FAMILIES[family](list(sizes), chosen)
