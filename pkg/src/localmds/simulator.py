"""simulator — synchronous LOCAL-model round engine and locality auditor.

A :class:`NodeProgram` is three pure functions.  ``init`` builds a node's
state from its :class:`NodeView`; ``on_round`` maps (state, inbox) to
(state, outbox, halted); ``output`` reads the final answer off the state.

Round semantics used by :func:`run`:

* Handler call 0 sees an empty inbox.  Every outbox produced by call k is
  delivered as the inbox of call k+1, including outboxes of nodes that halt
  on call k.
* A halted node is never called again and its output is frozen.
* ``rounds_used`` is the number of handler calls minus one, so a program that
  halts immediately uses zero rounds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional

from localmds.exceptions import ProgramContractError, RoundLimitExceeded
from localmds.graph import Graph, edge_key
from localmds.lib import config
from localmds.lib.models import RunTranscript

Outbox = Mapping[int, Any]


@dataclass(frozen=True)
class NodeView:
    """What a node knows before the first round: itself and its incident edges."""

    vertex: int
    neighbors: tuple[int, ...]
    vertex_weight: Fraction = Fraction(1)
    edge_weights: Mapping[int, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class NodeProgram:
    """A deterministic per-node program for the round engine.

    Attributes:
        name: Program name used in diagnostics.
        init: NodeView -> initial state.
        on_round: (state, inbox) -> (state, outbox, halted).
        output: state -> output value.
    """

    name: str
    init: Callable[[NodeView], Any]
    on_round: Callable[[Any, Mapping[int, Any]], tuple[Any, Outbox, bool]]
    output: Callable[[Any], Any]


def log_star(n: int) -> int:
    """Iterated base-2 logarithm: applications of log2 until the value is <= 1."""
    count = 0
    x = float(n)
    while x > 1:
        x = math.log2(x)
        count += 1
    return count


def default_max_rounds(n: int) -> int:
    """Round budget ``factor * (log*(n) + offset)`` from the simulation config."""
    factor = config.get_int("simulation.max_rounds_factor")
    offset = config.get_int("simulation.max_rounds_offset")
    return factor * (log_star(n) + offset)


def node_view(g: Graph, v: int) -> NodeView:
    neighbors = tuple(sorted(g.neighbors(v)))
    return NodeView(
        vertex=v,
        neighbors=neighbors,
        vertex_weight=g.weight(v),
        edge_weights={u: g.edge_weight(v, u) for u in neighbors},
    )


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


def run(
    g: Graph,
    prog: NodeProgram,
    max_rounds: Optional[int] = None,
    order_seed: Optional[int] = None,
) -> RunTranscript:
    """Execute ``prog`` on every vertex of g in lockstep rounds.

    Args:
        g: Communication graph.
        prog: The node program.
        max_rounds: Round budget; defaults to :func:`default_max_rounds`.
        order_seed: When given, nodes are evaluated in a seeded random order
            within each round. Outputs must not depend on it.

    Returns:
        The RunTranscript.

    Raises:
        RoundLimitExceeded: If a node is still running after ``max_rounds``
            rounds; the partial transcript is attached.
        ProgramContractError: If a node addresses a non-neighbor.
    """
    budget = default_max_rounds(g.n) if max_rounds is None else max_rounds
    adj = g.adjacency()
    states = {v: prog.init(node_view(g, v)) for v in g.vertices}
    inboxes: dict[int, dict[int, Any]] = {v: {} for v in g.vertices}
    active = list(g.vertices)
    rng = random.Random(order_seed) if order_seed is not None else None
    calls = 0
    messages = 0

    def transcript() -> RunTranscript:
        return RunTranscript(
            outputs={v: prog.output(states[v]) for v in g.vertices},
            rounds_used=max(calls - 1, 0),
            messages_sent=messages,
        )

    while active:
        if calls > budget:
            raise RoundLimitExceeded(prog.name, budget, transcript())
        order = list(active)
        if rng is not None:
            rng.shuffle(order)
        outgoing: dict[int, dict[int, Any]] = {v: {} for v in g.vertices}
        halted: set[int] = set()
        for v in order:
            state, outbox, done = prog.on_round(states[v], inboxes[v])
            for target, msg in outbox.items():
                if target not in adj[v]:
                    raise ProgramContractError(v, target)
                outgoing[target][v] = msg
            messages += len(outbox)
            states[v] = state
            if done:
                halted.add(v)
        inboxes = {v: dict(sorted(box.items())) for v, box in outgoing.items()}
        active = [v for v in active if v not in halted]
        calls += 1
    return transcript()


# ---------------------------------------------------------------------------
# Ball gathering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Knowledge:
    """Adjacency lists and weights a node has learned so far."""

    adjacency: Mapping[int, frozenset[int]]
    vertex_weights: Mapping[int, Fraction]
    edge_weights: Mapping[tuple[int, int], Fraction]

    def merge(self, others: Mapping[int, _Knowledge]) -> _Knowledge:
        adjacency = dict(self.adjacency)
        vertex_weights = dict(self.vertex_weights)
        edge_weights = dict(self.edge_weights)
        for other in others.values():
            adjacency.update(other.adjacency)
            vertex_weights.update(other.vertex_weights)
            edge_weights.update(other.edge_weights)
        return _Knowledge(adjacency, vertex_weights, edge_weights)

    def ball(self, v: int, r: int) -> Graph:
        """Induced graph on the learned r-ball around v."""
        seen = {v}
        frontier = [v]
        for _ in range(r):
            frontier = [u for x in frontier for u in self.adjacency[x] if u not in seen]
            seen.update(frontier)
        edges = {
            edge_key(x, u) for x in seen for u in self.adjacency.get(x, ()) if u in seen
        }
        return Graph(
            seen,
            edges,
            vertex_weights={x: self.vertex_weights[x] for x in seen},
            edge_weights={e: self.edge_weights[e] for e in edges},
        )


@dataclass(frozen=True)
class _GatherState:
    vertex: int
    neighbors: tuple[int, ...]
    call: int
    knowledge: _Knowledge
    value: Any = None
    result: Any = None


def _gather_init(view: NodeView) -> _GatherState:
    v = view.vertex
    knowledge = _Knowledge(
        adjacency={v: frozenset(view.neighbors)},
        vertex_weights={v: view.vertex_weight},
        edge_weights={edge_key(v, u): w for u, w in view.edge_weights.items()},
    )
    return _GatherState(v, view.neighbors, 0, knowledge)


def gather_then(
    radius: int,
    compute: Callable[[Graph, int], Any],
    name: str = "gather",
) -> NodeProgram:
    """Program that floods for ``radius`` rounds, then outputs ``compute(ball, v)``.

    The ball is the induced subgraph G[N^radius[v]] with weights.
    """

    def on_round(state: _GatherState, inbox: Mapping[int, Any]) -> tuple[Any, Outbox, bool]:
        knowledge = state.knowledge.merge(inbox)
        if state.call == radius:
            result = compute(knowledge.ball(state.vertex, radius), state.vertex)
            return replace(state, knowledge=knowledge, result=result), {}, True
        outbox = {u: knowledge for u in state.neighbors}
        return replace(state, call=state.call + 1, knowledge=knowledge), outbox, False

    return NodeProgram(name=name, init=_gather_init, on_round=on_round, output=lambda s: s.result)


def gather_then_announce(
    radius: int,
    decide: Callable[[Graph, int], tuple[Any, Outbox]],
    collect: Callable[[Any, Mapping[int, Any]], Any],
    name: str = "gather-announce",
) -> NodeProgram:
    """Gather for ``radius`` rounds, announce to neighbors, collect one round later.

    ``decide(ball, v)`` returns a local value and an outbox (keys in N(v));
    ``collect(value, inbox)`` builds the output.  Uses ``radius + 1`` rounds.
    """

    def on_round(state: _GatherState, inbox: Mapping[int, Any]) -> tuple[Any, Outbox, bool]:
        if state.call > radius:
            return replace(state, result=collect(state.value, inbox)), {}, True
        knowledge = state.knowledge.merge(inbox)
        if state.call == radius:
            value, outbox = decide(knowledge.ball(state.vertex, radius), state.vertex)
            nxt = replace(state, call=state.call + 1, knowledge=knowledge, value=value)
            return nxt, outbox, False
        outbox = {u: knowledge for u in state.neighbors}
        return replace(state, call=state.call + 1, knowledge=knowledge), outbox, False

    return NodeProgram(name=name, init=_gather_init, on_round=on_round, output=lambda s: s.result)


def gather_ball_program(r: int) -> NodeProgram:
    """Program whose output at v is G[N^r[v]], obtained in exactly r rounds."""
    return gather_then(r, lambda ball, v: ball, name=f"gather-ball-{r}")


# ---------------------------------------------------------------------------
# Locality audit
# ---------------------------------------------------------------------------

_EDITS = ("add_edge", "remove_edge", "add_vertex")


def _perturb(g: Graph, outside: list[int], kind: str, rng: random.Random) -> Optional[Graph]:
    """One edit touching only ``outside`` vertices, or None if ``kind`` is impossible."""
    inside_edges = list(g.edges)
    if kind == "add_edge":
        pairs = [
            (a, b) for i, a in enumerate(outside) for b in outside[i + 1 :] if not g.has_edge(a, b)
        ]
        if not pairs:
            return None
        return Graph(g.vertices, [*inside_edges, rng.choice(pairs)])
    if kind == "remove_edge":
        removable = [e for e in inside_edges if e[0] in outside and e[1] in outside]
        if not removable:
            return None
        drop = rng.choice(removable)
        return Graph(g.vertices, [e for e in inside_edges if e != drop])
    fresh = max(g.vertices, default=-1) + 1
    limit = min(config.get_int("simulation.audit_max_attach"), len(outside))
    attach = rng.sample(outside, rng.randint(0, limit))
    return Graph([*g.vertices, fresh], [*inside_edges, *((a, fresh) for a in sorted(attach))])


def audit_locality(
    g: Graph,
    prog: NodeProgram,
    v: int,
    r: int,
    perturbations: Optional[int] = None,
    seed: int = 0,
) -> bool:
    """Check that v's output survives edits made strictly outside N^r[v].

    Each trial edits the original graph once: it adds an edge between two
    outside vertices, removes an edge between two outside vertices, or adds a
    fresh vertex (id one above the maximum) joined to a few outside vertices.
    Trial i starts at edit kind ``i mod 3`` and falls through to the next
    possible kind.  Edits drop weights; the program is run unweighted.

    Returns:
        True iff v's output is identical on every perturbed graph.
    """
    trials = config.get_int("defaults.audit_perturbations") if perturbations is None else perturbations
    base_graph = Graph(g.vertices, g.edges)
    expected = run(base_graph, prog).outputs[v]
    outside = [u for u in g.vertices if u not in g.ball(v, r)]
    rng = random.Random(seed)
    for trial in range(trials):
        for step in range(len(_EDITS)):
            edited = _perturb(base_graph, outside, _EDITS[(trial + step) % len(_EDITS)], rng)
            if edited is not None:
                break
        if run(edited, prog).outputs[v] != expected:
            return False
    return True
