"""Custom exceptions for localmds.

Defines the exception hierarchy used across the graph core, the round
engine, the algorithms and the CLI. All exceptions are importable from the
top-level ``localmds`` package and derive from :class:`LocalMdsError`, so
the CLI can report any library failure with a single handler.

Exceptions:
    GraphError — Invalid graph construction or an unknown vertex.
    GraphFormatError — Text-format parse failure, with the line number.
    PartitionError — A star list that is not a valid star partition.
    SearchRefusedError — An exhaustive search was refused by its size cap.
    RoundLimitExceeded — A node program did not halt in time; carries the
        partial transcript.
    ProgramContractError — A node program broke the engine contract.
    FormulaError — Formula evaluation or parsing failure.
    ClusteringError — Invalid clustering parameters or a violated bound.
    ClusterTooLargeError — A refinement cluster is above the exact-solve cap.
    NotDominatingError — A set given as dominating does not dominate.
"""

from __future__ import annotations

from typing import Any, Iterable

from localmds.lib import config


def _preview(items: Iterable[Any], limit: int = 8) -> str:
    """Render a short sorted preview of a vertex collection."""
    ordered = sorted(items)
    shown = ", ".join(str(x) for x in ordered[:limit])
    if len(ordered) > limit:
        shown += ", ..."
    return "{" + shown + "}"


class LocalMdsError(Exception):
    """Base class for every error raised by localmds."""


class GraphError(LocalMdsError, ValueError):
    """Raised for invalid graphs and unknown vertices.

    Attributes:
        key: The message template key that produced the error.
        fields: The values substituted into the template.
    """

    def __init__(self, key: str, **fields: Any) -> None:
        self.key = key
        self.fields = fields
        super().__init__(config.message(key, **fields))


class GraphFormatError(LocalMdsError, ValueError):
    """Raised when graph text cannot be parsed."""

    def __init__(self, line: int, detail: str) -> None:
        """Initialize with the failing line.

        Args:
            line: 1-based line number in the source text.
            detail: What was wrong with the line.
        """
        self.line = line
        self.detail = detail
        super().__init__(config.message("format_error", line=line, detail=detail))


class PartitionError(LocalMdsError, ValueError):
    """Raised when a star list is not a valid partition of the vertex set.

    The message names the offending star centre (or the uncovered vertices).
    """

    def __init__(self, key: str, center: Any = None, **fields: Any) -> None:
        self.key = key
        self.center = center
        self.fields = fields
        super().__init__(config.message(key, center=center, **fields))


class SearchRefusedError(LocalMdsError):
    """Raised when an exhaustive search is refused because input exceeds its cap.

    A refusal is never a wrong answer: callers may raise the cap explicitly.
    """

    def __init__(self, search: str, size: int, cap: int) -> None:
        self.search = search
        self.size = size
        self.cap = cap
        super().__init__(
            config.message("search_refused", search=search, size=size, cap=cap)
        )


class RoundLimitExceeded(LocalMdsError):
    """Raised when a node program exceeds ``max_rounds``.

    Attributes:
        transcript: The partial RunTranscript at the moment of the abort.
    """

    def __init__(self, program: str, max_rounds: int, transcript: Any) -> None:
        self.program = program
        self.max_rounds = max_rounds
        self.transcript = transcript
        super().__init__(
            config.message("round_limit", program=program, max_rounds=max_rounds)
        )


class ProgramContractError(LocalMdsError):
    """Raised when a node addresses a message to a vertex that is not its neighbor."""

    def __init__(self, vertex: int, target: Any) -> None:
        self.vertex = vertex
        self.target = target
        super().__init__(config.message("bad_outbox", vertex=vertex, target=target))


class FormulaError(LocalMdsError, ValueError):
    """Raised for unbound variables, wrong arity and unparsable formulas."""

    def __init__(self, key: str, **fields: Any) -> None:
        self.key = key
        self.fields = fields
        super().__init__(config.message(key, **fields))


class ClusteringError(LocalMdsError, ValueError):
    """Raised for invalid clustering parameters or a violated weight bound."""

    def __init__(self, key: str, **fields: Any) -> None:
        self.key = key
        self.fields = fields
        super().__init__(config.message(key, **fields))


class ClusterTooLargeError(LocalMdsError):
    """Raised when a refinement cluster is too large for the exact solver.

    Attributes:
        cluster: The offending vertex set.
        cap: The exact-solve cap in force.
    """

    def __init__(self, cluster: Iterable[int], cap: int) -> None:
        self.cluster = frozenset(cluster)
        self.cap = cap
        super().__init__(
            config.message(
                "cluster_too_large",
                size=len(self.cluster),
                sample=_preview(self.cluster, 4),
                cap=cap,
            )
        )


class NotDominatingError(LocalMdsError, ValueError):
    """Raised when a set required to dominate the graph does not."""

    def __init__(self, undominated: Iterable[int]) -> None:
        self.undominated = frozenset(undominated)
        super().__init__(
            config.message("not_dominating", vertices=_preview(self.undominated))
        )


class DensityBoundWarning(UserWarning):
    """Emitted when a measured density exceeds a caller-supplied bound."""
