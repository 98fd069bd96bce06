"""oracle — exact minimum dominating sets and approximation ratios.

The exact solver encodes closed neighborhoods as bitmasks and answers the
decision question "can ``budget`` vertices from ``allowed`` dominate the
still-undominated set?" by branch and bound.  It branches on the undominated
vertex with the fewest candidate dominators and prunes with two lower bounds
(maximum gain, and a greedy packing of vertices with disjoint candidate sets).
Failures are memoised.  The lexicographically smallest optimum is then
assembled one vertex at a time.

Everything here refuses inputs above its configured cap rather than running
for hours; ``LOCALMDS_ORACLE_CAP`` raises the exact-solver cap.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from localmds.exceptions import GraphError, NotDominatingError, SearchRefusedError
from localmds.graph import Graph
from localmds.lib import config


def undominated(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Return V(g) minus N[s].

    Raises:
        GraphError: If s names a vertex outside g.
    """
    covered: set[int] = set()
    for v in s:
        if v not in g:
            raise GraphError("unknown_vertex", vertex=v)
        covered |= g.closed_neighborhood(v)
    return frozenset(v for v in g.vertices if v not in covered)


def is_dominating(g: Graph, s: Iterable[int]) -> bool:
    """True iff N[s] = V(g)."""
    return not undominated(g, s)


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------


class _DominationSearch:
    """Bitmask decision procedure for bounded-size domination."""

    def __init__(self, g: Graph) -> None:
        self.order = g.vertices
        index = {v: i for i, v in enumerate(self.order)}
        self.closed = [
            sum(1 << index[u] for u in g.closed_neighborhood(v)) for v in self.order
        ]
        self.full = (1 << len(self.order)) - 1
        self._failed: dict[tuple[int, int], int] = {}

    @staticmethod
    def _bits(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def feasible(self, undom: int, allowed: int, budget: int) -> bool:
        """Can at most ``budget`` vertices of ``allowed`` dominate ``undom``?"""
        if not undom:
            return True
        if budget <= 0:
            return False
        key = (undom, allowed)
        if self._failed.get(key, -1) >= budget:
            return False

        best_u, best_cands = -1, None
        for u in self._bits(undom):
            cands = self.closed[u] & allowed
            if not cands:
                self._failed[key] = max(self._failed.get(key, -1), budget)
                return False
            if best_cands is None or cands.bit_count() < best_cands.bit_count():
                best_u, best_cands = u, cands

        gains = {w: (self.closed[w] & undom).bit_count() for w in self._bits(allowed)}
        max_gain = max(gains.values())
        if undom.bit_count() > budget * max_gain or self._packing_bound(undom, allowed) > budget:
            self._failed[key] = max(self._failed.get(key, -1), budget)
            return False

        remaining = allowed
        for w in sorted(self._bits(best_cands), key=lambda x: (-gains[x], x)):
            if self.feasible(undom & ~self.closed[w], remaining, budget - 1):
                return True
            remaining &= ~(1 << w)
        self._failed[key] = max(self._failed.get(key, -1), budget)
        return False

    def _packing_bound(self, undom: int, allowed: int) -> int:
        """Undominated vertices with pairwise disjoint candidate sets, picked greedily."""
        used = 0
        count = 0
        for u in self._bits(undom):
            cands = self.closed[u] & allowed
            if not cands & used:
                used |= cands
                count += 1
        return count


def _lexicographic_optimum(search: _DominationSearch, size: int) -> list[int]:
    """Smallest sorted index sequence of length ``size`` that dominates."""
    chosen: list[int] = []
    undom = search.full
    n = len(search.order)
    start = 0
    while len(chosen) < size:
        for x in range(start, n):
            after = search.full & ~((1 << (x + 1)) - 1)
            rest = undom & ~search.closed[x]
            if search.feasible(rest, after, size - len(chosen) - 1):
                chosen.append(x)
                undom = rest
                start = x + 1
                break
        else:  # pragma: no cover - size is feasible by construction
            raise RuntimeError("no dominating extension found")
    return chosen


def exact_mds(g: Graph, cap: Optional[int] = None) -> frozenset[int]:
    """Minimum dominating set with the lexicographically smallest id sequence.

    Args:
        g: Input graph.
        cap: Vertex-count cap; defaults to ``limits.oracle_cap`` or the
            ``LOCALMDS_ORACLE_CAP`` environment variable.

    Raises:
        SearchRefusedError: If g has more vertices than the cap.
    """
    limit = config.cap("oracle_cap", cap)
    if g.n > limit:
        raise SearchRefusedError("exact_mds", g.n, limit)
    if g.n == 0:
        return frozenset()
    search = _DominationSearch(g)
    max_degree = max(g.degree(v) for v in g.vertices)
    budget = -(-g.n // (max_degree + 1))
    while not search.feasible(search.full, search.full, budget):
        budget += 1
    return frozenset(search.order[i] for i in _lexicographic_optimum(search, budget))


def gamma(g: Graph, cap: Optional[int] = None) -> int:
    """Domination number of g."""
    return len(exact_mds(g, cap))


def exhaustive_mds(g: Graph, cap: Optional[int] = None) -> frozenset[int]:
    """Reference solver: first dominating combination in size-then-lexicographic order.

    Raises:
        SearchRefusedError: If g has more vertices than ``limits.exhaustive_cap``.
    """
    limit = config.cap("exhaustive_cap", cap)
    if g.n > limit:
        raise SearchRefusedError("exhaustive_mds", g.n, limit)
    for size in range(g.n + 1):
        for combo in combinations(g.vertices, size):
            if is_dominating(g, combo):
                return frozenset(combo)
    return frozenset()


def greedy_mds(g: Graph) -> frozenset[int]:
    """Classic set-cover greedy: repeatedly take the vertex covering most undominated vertices."""
    remaining = set(g.vertices)
    chosen: set[int] = set()
    while remaining:
        best = max(g.vertices, key=lambda v: (len(g.closed_neighborhood(v) & remaining), -v))
        chosen.add(best)
        remaining -= g.closed_neighborhood(best)
    return frozenset(chosen)


def ratio(g: Graph, s: Iterable[int], cap: Optional[int] = None) -> Fraction:
    """Return |s| / gamma(g) exactly.

    Raises:
        NotDominatingError: If s does not dominate g.
        SearchRefusedError: If g is above the oracle cap.
    """
    chosen = frozenset(s)
    missing = undominated(g, chosen)
    if missing:
        raise NotDominatingError(missing)
    optimum = gamma(g, cap)
    if optimum == 0:
        return Fraction(1)
    return Fraction(len(chosen), optimum)
