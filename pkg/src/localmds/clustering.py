"""clustering — heavy stars and iterated star contraction.

A pseudo-forest keeps, for every vertex, its heaviest incident edge.  Its
underlying graph is 3-coloured by Cole-Vishkin colour reduction, and the
colour classes then decide one after another whether they act as star
centres.  Each decision maximises the expected captured weight given the
earlier classes (undecided vertices count as centres with probability 1/2),
so at least a quarter of the pseudo-forest weight ends up inside stars.

:func:`cluster` repeats the star contraction until the edge weight left
between clusters drops below an epsilon share of the original.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Union

from localmds import simulator
from localmds.exceptions import ClusteringError
from localmds.graph import Graph, contract_stars
from localmds.lib import config
from localmds.lib.models import ClusterPartition, PseudoForest, StarPartition
from localmds.minors import genus_density_bound

Rational = Union[int, Fraction]
ExpansionBound = Callable[[int], Rational]

_PALETTE = 6
_FINAL_COLORS = (0, 1, 2)
_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Pseudo-forest
# ---------------------------------------------------------------------------


def _heaviest(weights: Mapping[int, Fraction]) -> Optional[int]:
    """Neighbor across the heaviest incident edge, smallest id on ties."""
    if not weights:
        return None
    return min(weights, key=lambda u: (-weights[u], u))


def _parent(v: int, choice: Optional[int], chosen_by: frozenset[int]) -> Optional[int]:
    """Out-neighbor after removing the larger endpoint's copy of a mutual choice."""
    if choice is not None and choice in chosen_by and v > choice:
        return None
    return choice


def pseudo_forest(g: Graph) -> PseudoForest:
    """Every vertex picks its heaviest incident edge; mutual picks are kept once.

    A mutually chosen edge is directed from the smaller id to the larger one.
    """
    choice = {v: _heaviest({u: g.edge_weight(v, u) for u in g.neighbors(v)}) for v in g.vertices}
    chosen_by: dict[int, set[int]] = {v: set() for v in g.vertices}
    for v, target in choice.items():
        if target is not None:
            chosen_by[target].add(v)
    arcs = {v: _parent(v, choice[v], frozenset(chosen_by[v])) for v in g.vertices}
    retained = sum((g.edge_weight(v, p) for v, p in arcs.items() if p is not None), Fraction(0))
    return PseudoForest(arcs=arcs, weight_retained=retained)


# ---------------------------------------------------------------------------
# Colour reduction
# ---------------------------------------------------------------------------


def cole_vishkin_iterations(id_bound: int) -> int:
    """Reduction steps that shrink a palette of ``id_bound`` colours to six."""
    steps = 0
    palette = max(id_bound, 1)
    while palette > _PALETTE:
        palette = 2 * (palette - 1).bit_length()
        steps += 1
    return steps


def _reduce(color: int, parent_color: Optional[int]) -> int:
    """One Cole-Vishkin step: position and value of the lowest differing bit."""
    if parent_color is None:
        return color & 1
    diff = color ^ parent_color
    index = (diff & -diff).bit_length() - 1
    return 2 * index + ((color >> index) & 1)


def _shift(color: int, parent_color: Optional[int]) -> int:
    """Shift-down: take the parent's colour; a root picks a new small colour."""
    if parent_color is None:
        return min(c for c in _FINAL_COLORS if c != color)
    return parent_color


def _recolor(color: int, stage: int, parent_color: Optional[int], child_color: Optional[int]) -> int:
    if color != stage:
        return color
    return min(c for c in _FINAL_COLORS if c not in (parent_color, child_color))


def cole_vishkin_coloring(forest: PseudoForest) -> tuple[dict[int, int], int]:
    """Proper 3-colouring of the pseudo-forest's underlying graph.

    Colours start as vertex ids.  Reduction steps run until at most six
    colours remain; three shift-down and recolour stages then remove the
    colours 5, 4 and 3.

    Returns:
        (colouring, number of reduction steps).
    """
    arcs = forest.arcs
    has_children = {p for p in arcs.values() if p is not None}
    steps = cole_vishkin_iterations(max(arcs, default=-1) + 1)
    colors = {v: v for v in arcs}
    for _ in range(steps):
        colors = {v: _reduce(colors[v], _lookup(colors, arcs[v])) for v in arcs}
    for stage in range(_PALETTE - 1, len(_FINAL_COLORS) - 1, -1):
        before = colors
        shifted = {v: _shift(before[v], _lookup(before, arcs[v])) for v in arcs}
        colors = {
            v: _recolor(
                shifted[v],
                stage,
                _lookup(shifted, arcs[v]),
                before[v] if v in has_children else None,
            )
            for v in arcs
        }
    return colors, steps


def _lookup(colors: Mapping[int, int], v: Optional[int]) -> Optional[int]:
    return None if v is None else colors[v]


# ---------------------------------------------------------------------------
# Star formation
# ---------------------------------------------------------------------------


def _chance(status: Optional[bool], centre: bool) -> Fraction:
    """Probability that a vertex with this decision is (or is not) a centre."""
    if status is None:
        return _HALF
    return Fraction(int(status == centre))


def _decide(
    out_weight: Fraction,
    parent_status: Optional[bool],
    children: Mapping[int, tuple[Fraction, Optional[bool]]],
) -> bool:
    """Become a centre iff that captures strictly more expected weight.

    Args:
        out_weight: Weight of the arc to the parent (0 for a root).
        parent_status: The parent's decision, None while undecided.
        children: child -> (arc weight, decision or None).
    """
    as_centre = sum((w * _chance(s, False) for w, s in children.values()), Fraction(0))
    as_leaf = out_weight * _chance(parent_status, True) if out_weight else Fraction(0)
    return as_centre > as_leaf


def _stars_from_centres(arcs: Mapping[int, Optional[int]], centres: frozenset[int]) -> list[tuple[int, frozenset[int]]]:
    leaves: dict[int, set[int]] = {c: set() for c in centres}
    singles: list[int] = []
    for v in sorted(arcs):
        if v in centres:
            continue
        parent = arcs[v]
        if parent is not None and parent in centres:
            leaves[parent].add(v)
        else:
            singles.append(v)
    stars = [(c, frozenset(ls)) for c, ls in leaves.items()] + [(v, frozenset()) for v in singles]
    return sorted(stars)


def _check_arboricity(a: Rational) -> None:
    if a < 1:
        raise ClusteringError("negative_parameter", name="a", minimum=1, value=a)


def heavy_star_partition(g: Graph, a: Rational) -> StarPartition:
    """Partition V(g) into stars holding at least 1/(8a) of the edge weight.

    Args:
        g: Edge-weighted graph.
        a: Arboricity bound of g; the weight guarantee needs ``a`` to be at
            least the true arboricity.

    Raises:
        ClusteringError: If a < 1.
    """
    _check_arboricity(a)
    forest = pseudo_forest(g)
    colors, _ = cole_vishkin_coloring(forest)
    children = forest.children()
    status: dict[int, Optional[bool]] = {v: None for v in g.vertices}
    for klass in _FINAL_COLORS:
        batch = [v for v in g.vertices if colors[v] == klass]
        decided = {
            v: _decide(
                g.edge_weight(v, forest.arcs[v]) if forest.arcs[v] is not None else Fraction(0),
                status[forest.arcs[v]] if forest.arcs[v] is not None else None,
                {u: (g.edge_weight(u, v), status[u]) for u in children[v]},
            )
            for v in batch
        }
        status.update(decided)
    centres = frozenset(v for v, s in status.items() if s)
    return contract_stars(g, _stars_from_centres(forest.arcs, centres))


# ---------------------------------------------------------------------------
# Distributed heavy stars
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _StarState:
    vertex: int
    call: int
    weights: Mapping[int, Fraction]
    choice: Optional[int]
    parent: Optional[int] = None
    children: frozenset[int] = frozenset()
    color: int = 0
    before_shift: int = 0
    centre: Optional[bool] = None
    centre_of: Optional[int] = None


def heavy_star_program(id_bound: int) -> simulator.NodeProgram:
    """Node program computing :func:`heavy_star_partition`; outputs each vertex's star centre.

    Schedule (handler calls): 0 announce the chosen edge, 1 learn children,
    then the Cole-Vishkin steps, two calls per shift/recolour stage, one
    call per colour class decision, and a final call that reads the centre.
    Every call after the first sends (colour, decision) to the forest
    neighbors.
    """
    steps = cole_vishkin_iterations(id_bound)
    reduce_end = 2 + steps
    stages = list(range(_PALETTE - 1, len(_FINAL_COLORS) - 1, -1))
    decide_start = reduce_end + 2 * len(stages)
    finish = decide_start + len(_FINAL_COLORS)

    def init(view: simulator.NodeView) -> _StarState:
        return _StarState(
            vertex=view.vertex,
            call=0,
            weights=dict(view.edge_weights),
            choice=_heaviest(view.edge_weights),
            color=view.vertex,
        )

    def broadcast(state: _StarState) -> dict[int, Any]:
        targets = set(state.children)
        if state.parent is not None:
            targets.add(state.parent)
        return {u: (state.color, state.centre) for u in targets}

    def on_round(state: _StarState, inbox: Mapping[int, Any]) -> tuple[Any, Mapping[int, Any], bool]:
        call = state.call
        nxt = replace(state, call=call + 1)
        if call == 0:
            return nxt, ({} if state.choice is None else {state.choice: "chosen"}), False
        if call == 1:
            chosen_by = frozenset(inbox)
            parent = _parent(state.vertex, state.choice, chosen_by)
            nxt = replace(nxt, parent=parent, children=chosen_by - {parent})
            return nxt, broadcast(nxt), False
        parent_color = inbox[state.parent][0] if state.parent is not None else None
        if call < reduce_end:
            nxt = replace(nxt, color=_reduce(state.color, parent_color))
            return nxt, broadcast(nxt), False
        if call < decide_start:
            stage = stages[(call - reduce_end) // 2]
            if (call - reduce_end) % 2 == 0:
                nxt = replace(nxt, color=_shift(state.color, parent_color), before_shift=state.color)
            else:
                child_color = state.before_shift if state.children else None
                nxt = replace(nxt, color=_recolor(state.color, stage, parent_color, child_color))
            return nxt, broadcast(nxt), False
        if call < finish:
            if state.color == call - decide_start:
                parent_status = inbox[state.parent][1] if state.parent is not None else None
                out_weight = state.weights[state.parent] if state.parent is not None else Fraction(0)
                children = {u: (state.weights[u], inbox[u][1]) for u in state.children}
                nxt = replace(nxt, centre=_decide(out_weight, parent_status, children))
            return nxt, broadcast(nxt), False
        if state.centre:
            centre_of = state.vertex
        elif state.parent is not None and inbox[state.parent][1]:
            centre_of = state.parent
        else:
            centre_of = state.vertex
        return replace(nxt, centre_of=centre_of), {}, True

    return simulator.NodeProgram(
        name="heavy-star",
        init=init,
        on_round=on_round,
        output=lambda s: s.centre_of,
    )


def run_heavy_star(g: Graph, max_rounds: Optional[int] = None) -> tuple[StarPartition, int]:
    """Run :func:`heavy_star_program` on g.

    Returns:
        (the star partition assembled from the outputs, rounds used).
    """
    program = heavy_star_program(max(g.vertices, default=-1) + 1)
    transcript = simulator.run(g, program, max_rounds=max_rounds)
    leaves: dict[int, set[int]] = {}
    for v, centre in transcript.outputs.items():
        members = leaves.setdefault(centre, set())
        if v != centre:
            members.add(v)
    stars = sorted((c, frozenset(ls)) for c, ls in leaves.items())
    return contract_stars(g, stars), transcript.rounds_used


# ---------------------------------------------------------------------------
# Iterated clustering
# ---------------------------------------------------------------------------


def expansion_preset(
    name: str,
    genus: Optional[int] = None,
    table: Optional[Mapping[int, Rational]] = None,
    value: Optional[Rational] = None,
) -> ExpansionBound:
    """Named expansion bounds r -> f(r).

    ``planar`` is the constant 3, ``genus`` the constant density bound of the
    given genus, ``constant`` the given value, and ``custom`` a step function
    over ``table`` (each radius takes the entry of the largest key not above
    it; radii below the smallest key take the smallest key's entry).

    Raises:
        ClusteringError: On an unknown name or a missing argument.
    """
    if name == "planar":
        bound = Fraction(config.get_int("presets.planar"))
        return lambda r: bound
    if name == "genus":
        if genus is None:
            raise ClusteringError("preset_argument", name=name, detail="a genus")
        bound = Fraction(genus_density_bound(genus))
        return lambda r: bound
    if name == "constant":
        if value is None:
            raise ClusteringError("preset_argument", name=name, detail="a value")
        bound = Fraction(value)
        return lambda r: bound
    if name == "custom":
        if not table:
            raise ClusteringError("preset_argument", name=name, detail="a non-empty table")
        keys = sorted(table)

        def step(r: int) -> Rational:
            eligible = [k for k in keys if k <= r]
            return Fraction(table[eligible[-1] if eligible else keys[0]])

        return step
    raise ClusteringError("unknown_preset", name=name)


def _check_epsilon(epsilon: Rational) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ClusteringError("epsilon_range", epsilon=eps)
    return eps


def _arboricity(expansion_bound: ExpansionBound, i: int) -> Fraction:
    """2 f((3^i - 1)/2): arboricity bound after i contractions."""
    return 2 * Fraction(expansion_bound((3**i - 1) // 2))


def clustering_iterations(
    epsilon: Rational,
    expansion_bound: ExpansionBound,
    cap: Optional[int] = None,
) -> int:
    """Least i with (1 - 1/(8 * 2f((3^i-1)/2)))^i <= epsilon.

    A float estimate screens each candidate; only plausible ones are checked
    exactly.

    Raises:
        ClusteringError: If epsilon is outside (0, 1) or no i up to the cap
            qualifies.
    """
    eps = _check_epsilon(epsilon)
    limit = config.cap("clustering_search_cap", cap)
    log_eps = math.log(eps)
    for i in range(1, limit + 1):
        a = _arboricity(expansion_bound, i)
        if a <= 0:
            raise ClusteringError("positive_parameter", name="expansion_bound", value=a)
        shrink = 1 - 1 / (8 * a)
        if i * math.log(float(shrink)) > log_eps + 1e-9:
            continue
        if shrink**i <= eps:
            return i
    raise ClusteringError("clustering_exhausted", cap=limit)


def crossing_weight(g: Graph, clusters: Iterable[frozenset[int]]) -> Fraction:
    """Total weight of g-edges whose endpoints lie in different clusters."""
    owner = {v: i for i, part in enumerate(clusters) for v in part}
    return sum(
        (g.edge_weight(u, v) for u, v in g.edges if owner[u] != owner[v]),
        Fraction(0),
    )


def cluster(g: Graph, epsilon: Rational, expansion_bound: ExpansionBound) -> ClusterPartition:
    """Contract heavy stars i0 times and return the induced partition of V(g).

    Each contracted vertex carries the original vertices it stands for.  The
    loop stops early once no edge is left.

    Raises:
        ClusteringError: If epsilon is outside (0, 1), i0 cannot be found,
            or the crossing weight exceeds epsilon times the total weight
            (which means the expansion bound was too small for g).
    """
    eps = _check_epsilon(epsilon)
    rounds = clustering_iterations(eps, expansion_bound)
    members: dict[int, frozenset[int]] = {v: frozenset([v]) for v in g.vertices}
    h = g
    done = 0
    for i in range(1, rounds + 1):
        if h.m == 0:
            break
        partition = heavy_star_partition(h, _arboricity(expansion_bound, i))
        members = {
            centre: frozenset().union(*(members[x] for x in part))
            for centre, part in partition.members().items()
        }
        h = partition.quotient
        done = i
    clusters = tuple(sorted(members.values(), key=min))
    weight = crossing_weight(g, clusters)
    bound = eps * g.total_edge_weight()
    if weight > bound:
        raise ClusteringError("clustering_bound", weight=weight, bound=bound)
    return ClusterPartition(
        clusters=clusters,
        radius_bound=(3**rounds - 1) // 2,
        crossing_weight=weight,
        iterations=done,
    )
