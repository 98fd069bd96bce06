"""lenzen — constant-round dominating set approximation for sparse graph classes.

Phase 1 puts into D every vertex whose open neighborhood cannot be covered by
at most 2c closed neighborhoods of other vertices.  Phase 2 lets every vertex
that D does not dominate elect the neighbor (or itself) with the largest
residual degree |N[w] - N[D]|, ties going to the smallest id.

The genus variant runs Phase 1 with c = ceil(5 sqrt(g)), then absorbs up to
g pairwise disjoint canonical K3,3 subgraphs of G - D into D before Phase 2.

Each algorithm exists twice: as a direct function over the whole graph and
as a :class:`~localmds.simulator.NodeProgram` that gathers a ball, decides
locally and announces its election one round later.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Optional, Union

import networkx as nx

from localmds import simulator
from localmds.exceptions import GraphError
from localmds.graph import Graph
from localmds.lib import config
from localmds.lib.models import MdsResult
from localmds.minors import canonical_k33_subgraph, genus_density_bound, max_disjoint_k33_models

Rational = Union[int, Fraction]


class NodeDecision(NamedTuple):
    """Per-node output of the distributed programs."""

    phase1: bool
    preprocessing: bool
    phase2: bool


# ---------------------------------------------------------------------------
# Phase 1
# ---------------------------------------------------------------------------


def coverable(g: Graph, v: int, k: int) -> bool:
    """True iff some A in V(g) - {v}, |A| <= k, satisfies N(v) within N[A].

    Branches on the uncovered neighbor with the fewest candidate coverers;
    every candidate lies in N^2[v].
    """
    targets = g.neighbors(v)
    if k < 0:
        raise GraphError("negative_parameter", name="k", minimum=0, value=k)
    failed: dict[frozenset[int], int] = {}

    def candidates(u: int) -> frozenset[int]:
        return g.closed_neighborhood(u) - {v}

    def search(uncovered: frozenset[int], budget: int) -> bool:
        if not uncovered:
            return True
        if budget == 0 or failed.get(uncovered, -1) >= budget:
            return False
        gain = max(len(g.closed_neighborhood(w) & uncovered) for u in uncovered for w in candidates(u))
        if len(uncovered) > budget * gain:
            failed[uncovered] = budget
            return False
        pivot = min(uncovered, key=lambda u: (len(candidates(u)), u))
        for w in sorted(candidates(pivot)):
            if search(uncovered - g.closed_neighborhood(w), budget - 1):
                return True
        failed[uncovered] = budget
        return False

    return search(targets, k)


def _threshold(c: Rational) -> int:
    if c < 1:
        raise GraphError("negative_parameter", name="c", minimum=1, value=c)
    return math.floor(2 * Fraction(c))


def phase1(g: Graph, c: Rational) -> frozenset[int]:
    """D = vertices whose neighborhood is not coverable with floor(2c) vertices."""
    k = _threshold(c)
    return frozenset(v for v in g.vertices if not coverable(g, v, k))


# ---------------------------------------------------------------------------
# Phase 2
# ---------------------------------------------------------------------------


def _dominator(g: Graph, v: int, dominated: frozenset[int]) -> int:
    """Member of N[v] with the largest residual degree, smallest id on ties."""
    return min(
        g.closed_neighborhood(v),
        key=lambda w: (-len(g.closed_neighborhood(w) - dominated), w),
    )


def phase2(g: Graph, d: Iterable[int]) -> frozenset[int]:
    """Elected dominators of every vertex outside N[d]."""
    dominated = g.set_neighborhood(d)
    return frozenset(
        _dominator(g, v, dominated) for v in g.vertices if v not in dominated
    )


# ---------------------------------------------------------------------------
# Direct algorithms
# ---------------------------------------------------------------------------


def lenzen_round_count() -> int:
    """Rounds of the distributed two-phase algorithm: gather radius plus one."""
    return config.get_int("lenzen.gather_radius") + 1


def genus_gather_radius(genus: int) -> int:
    return config.get_int("lenzen.genus_radius_step") * genus + config.get_int(
        "lenzen.genus_radius_base"
    )


def genus_round_count(genus: int) -> int:
    """Rounds of the distributed genus algorithm."""
    return genus_gather_radius(genus) + 1


def modified_lenzen(g: Graph, c: Rational) -> MdsResult:
    """Two-phase approximation with cover threshold floor(2c)."""
    d = phase1(g, c)
    return MdsResult.from_parts(
        d, (), phase2(g, d), lenzen_round_count(), config.get_str("algorithms.lenzen")
    )


def original_lenzen(g: Graph) -> MdsResult:
    """The planar algorithm with cover threshold 6."""
    result = modified_lenzen(g, config.get_int("lenzen.planar_c"))
    return MdsResult.from_parts(
        result.phase1_set,
        (),
        result.phase2_set,
        result.rounds_used,
        config.get_str("algorithms.lenzen_planar"),
    )


def absorb_k33_subgraphs(g: Graph, d: frozenset[int], iterations: int) -> frozenset[int]:
    """Absorb disjoint canonical K3,3 subgraphs of G - d, one batch per iteration.

    Canonical subgraphs are computed once.  In each iteration a vertex's
    subgraph is chosen unless an active smaller vertex has an intersecting
    one; afterwards every candidate meeting an absorbed vertex drops out.
    """
    if iterations <= 0:
        return frozenset()
    h = g.remove_vertices(d)
    if nx.check_planarity(h.nx_graph)[0]:
        return frozenset()
    canon: dict[int, frozenset[int]] = {}
    for v in h.vertices:
        k = canonical_k33_subgraph(h, v)
        if k is not None:
            canon[v] = frozenset(k.vertices)
    active = sorted(canon)
    absorbed: set[int] = set()
    for _ in range(iterations):
        if not active:
            break
        chosen = [
            v
            for v in active
            if not any(u < v and canon[u] & canon[v] for u in active)
        ]
        for v in chosen:
            absorbed |= canon[v]
        active = [v for v in active if v not in chosen and not canon[v] & absorbed]
    return frozenset(absorbed)


def genus_algorithm(g: Graph, genus: int) -> MdsResult:
    """Genus-aware variant with K3,3 preprocessing.

    Raises:
        GraphError: If genus is negative.
    """
    c = genus_density_bound(genus)
    d = phase1(g, c)
    absorbed = absorb_k33_subgraphs(g, d, max_disjoint_k33_models(genus))
    return MdsResult.from_parts(
        d,
        absorbed,
        phase2(g, d | absorbed),
        genus_round_count(genus),
        config.get_str("algorithms.genus"),
    )


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


def approximation_bound(c: Rational, t: int) -> Fraction:
    """Approximation factor 6c^2 t + (2t+5)c + 4 of the two-phase algorithm."""
    c = Fraction(c)
    return 6 * c * c * t + (2 * t + 5) * c + 4


def genus_ratio_bound(genus: int) -> Fraction:
    """Conservative ratio bound for the genus algorithm: the planar-style bound plus 24g."""
    return approximation_bound(genus_density_bound(genus), 3) + 24 * genus


def unprocessed_genus_bound(genus: int) -> Fraction:
    """Ratio bound of the two-phase algorithm on genus-g inputs without preprocessing."""
    c = genus_density_bound(genus)
    return 4 * (6 * c * c + 2 * c) * genus + approximation_bound(c, 3)


# ---------------------------------------------------------------------------
# Distributed programs
# ---------------------------------------------------------------------------


def _announce(ball: Graph, v: int, d: frozenset[int]) -> tuple[bool, dict[int, bool]]:
    """Elect a dominator if v is undominated; returns (self-elected, outbox)."""
    dominated = ball.set_neighborhood(d & ball.ball(v, 3))
    if v in dominated:
        return False, {}
    dom = _dominator(ball, v, dominated)
    return (True, {}) if dom == v else (False, {dom: True})


def _collect(value: tuple[bool, bool, bool], inbox: Mapping[int, bool]) -> NodeDecision:
    in_d, in_pre, self_elected = value
    return NodeDecision(in_d, in_pre, self_elected or bool(inbox))


def lenzen_program(c: Rational) -> simulator.NodeProgram:
    """Node program for :func:`modified_lenzen` (gather radius 5, six rounds)."""
    k = _threshold(c)

    def decide(ball: Graph, v: int) -> tuple[tuple[bool, bool, bool], dict[int, bool]]:
        d = frozenset(x for x in ball.ball(v, 3) if not coverable(ball, x, k))
        self_elected, outbox = _announce(ball, v, d)
        return (v in d, False, self_elected), outbox

    return simulator.gather_then_announce(
        config.get_int("lenzen.gather_radius"),
        decide,
        _collect,
        name=config.get_str("algorithms.lenzen"),
    )


@lru_cache(maxsize=256)
def _genus_on_ball(ball: Graph, genus: int) -> tuple[frozenset[int], frozenset[int]]:
    result = genus_algorithm(ball, genus)
    return result.phase1_set, result.preprocessing_set


def genus_program(genus: int) -> simulator.NodeProgram:
    """Node program for :func:`genus_algorithm` (gather radius 24g+5)."""
    if genus < 0:
        raise GraphError("negative_parameter", name="genus", minimum=0, value=genus)

    def decide(ball: Graph, v: int) -> tuple[tuple[bool, bool, bool], dict[int, bool]]:
        d, absorbed = _genus_on_ball(ball, genus)
        self_elected, outbox = _announce(ball, v, d | absorbed)
        return (v in d, v in absorbed, self_elected), outbox

    return simulator.gather_then_announce(
        genus_gather_radius(genus),
        decide,
        _collect,
        name=config.get_str("algorithms.genus"),
    )


def run_distributed(
    g: Graph,
    program: simulator.NodeProgram,
    max_rounds: Optional[int] = None,
    order_seed: Optional[int] = None,
) -> MdsResult:
    """Run a dominating-set node program and assemble its MdsResult."""
    transcript = simulator.run(g, program, max_rounds=max_rounds, order_seed=order_seed)
    outputs: dict[int, NodeDecision] = transcript.outputs
    return MdsResult.from_parts(
        (v for v, out in outputs.items() if out.phase1),
        (v for v, out in outputs.items() if out.preprocessing),
        (v for v, out in outputs.items() if out.phase2),
        transcript.rounds_used,
        program.name,
    )
