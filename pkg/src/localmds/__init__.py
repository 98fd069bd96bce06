"""localmds — deterministic LOCAL-model dominating set approximation.

Graph core, a synchronous round engine, the constant-round dominating set
algorithms for sparse graph classes, first-order definability checks, a
low-diameter clustering, a clustering-based refinement and an exact
reference oracle.
"""

from localmds.exceptions import (
    ClusteringError,
    ClusterTooLargeError,
    DensityBoundWarning,
    FormulaError,
    GraphError,
    GraphFormatError,
    LocalMdsError,
    NotDominatingError,
    PartitionError,
    ProgramContractError,
    RoundLimitExceeded,
    SearchRefusedError,
)
from localmds.graph import Graph

__version__ = "0.1.0"

__all__ = [
    "ClusterTooLargeError",
    "ClusteringError",
    "DensityBoundWarning",
    "FormulaError",
    "Graph",
    "GraphError",
    "GraphFormatError",
    "LocalMdsError",
    "NotDominatingError",
    "PartitionError",
    "ProgramContractError",
    "RoundLimitExceeded",
    "SearchRefusedError",
    "__version__",
]
