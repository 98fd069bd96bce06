"""ptas — refine an approximate dominating set to a (1 + epsilon)-approximation.

Every vertex joins the part of its smallest dominator in d, the parts are
contracted, the contracted graph is clustered with delta = epsilon / (2 c
nabla1), and each uncontracted cluster is solved exactly.  The union of the
cluster optima dominates g because the clusters partition V(g).
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Iterable, Optional, Union

from localmds.clustering import ExpansionBound, cluster
from localmds.exceptions import ClusteringError, ClusterTooLargeError, DensityBoundWarning, NotDominatingError
from localmds.graph import Graph, contract_stars
from localmds.lib import config
from localmds.oracle import exact_mds, undominated

Rational = Union[int, Fraction]

_MAX_DELTA = Fraction(1, 2)


def _positive(name: str, value: Rational) -> Fraction:
    value = Fraction(value)
    if value <= 0:
        raise ClusteringError("positive_parameter", name=name, value=value)
    return value


def dominator_parts(g: Graph, d: frozenset[int]) -> list[tuple[int, frozenset[int]]]:
    """Radius-1 parts W_x: x in d plus the vertices whose smallest dominator is x."""
    leaves: dict[int, set[int]] = {x: set() for x in d}
    for v in g.vertices:
        if v not in d:
            leaves[min(g.neighbors(v) & d)].add(v)
    return sorted((x, frozenset(ls)) for x, ls in leaves.items())


def refine_delta(epsilon: Rational, c: Rational, nabla1_bound: Rational) -> Fraction:
    """Clustering parameter epsilon / (2 c nabla1), clamped to at most 1/2."""
    return min(Fraction(epsilon) / (2 * Fraction(c) * Fraction(nabla1_bound)), _MAX_DELTA)


def refine(
    g: Graph,
    d: Iterable[int],
    epsilon: Rational,
    c: Rational,
    nabla1_bound: Rational,
    expansion_bound: ExpansionBound,
    cluster_cap: Optional[int] = None,
    oracle_cap: Optional[int] = None,
) -> frozenset[int]:
    """Turn a c-approximate dominating set d into a (1 + epsilon)-approximation.

    Args:
        g: The graph.
        d: A dominating set of g with |d| <= c * gamma(g).
        epsilon: Target accuracy, > 0.
        c: Approximation factor of d.
        nabla1_bound: Upper bound on the depth-1 minor density of g.
        expansion_bound: r -> bound on the depth-r minor density.
        cluster_cap: Largest cluster solved exactly (``limits.cluster_cap``).
        oracle_cap: Exact-solver cap; defaults to the cluster cap in force.

    Returns:
        The union of the exact optima of the clusters.

    Raises:
        NotDominatingError: If d does not dominate g.
        ClusterTooLargeError: If a cluster exceeds the cap.
        ClusteringError: If epsilon, c or nabla1_bound is not positive.

    Warns:
        DensityBoundWarning: If the contracted graph is denser than
            nabla1_bound.
    """
    d = frozenset(d)
    missing = undominated(g, d)
    if missing:
        raise NotDominatingError(missing)
    eps = _positive("epsilon", epsilon)
    factor = _positive("c", c)
    nabla1 = _positive("nabla1_bound", nabla1_bound)
    limit = config.cap("cluster_cap", cluster_cap)
    solver_cap = limit if oracle_cap is None else oracle_cap

    parts = contract_stars(g, dominator_parts(g, d))
    h = parts.quotient.with_unit_edge_weights()
    if h.n and Fraction(h.m, h.n) > nabla1:
        warnings.warn(
            config.message("density_warning", density=Fraction(h.m, h.n), bound=nabla1),
            DensityBoundWarning,
            stacklevel=2,
        )

    partition = cluster(h, refine_delta(eps, factor, nabla1), expansion_bound)
    members = parts.members()
    result: set[int] = set()
    for part in partition.clusters:
        original = frozenset().union(*(members[x] for x in part))
        if len(original) > limit:
            raise ClusterTooLargeError(original, limit)
        result |= exact_mds(g.induced(original), cap=solver_cap)
    return frozenset(result)
