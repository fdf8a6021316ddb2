"""Maximum weight t-matchings avoiding complete partite subgraphs.

Library entry points:

* :func:`tmatch.pipeline.solve` - full solve for one instance
* :class:`tmatch.graph.Graph` / :class:`tmatch.variant.Variant` - inputs
* :mod:`tmatch.oracle` - brute-force references for small instances
* :mod:`tmatch.generators` - seeded random/planted instance generators
"""

from .errors import (
    InfeasibleError,
    InputFormatError,
    InstanceTooLargeError,
    InternalError,
    NotVertexInducedError,
    TmatchError,
    ValidationError,
)
from .graph import CapacityVector, Graph, MultiGraph
from .pipeline import solve
from .recover import SolveResult
from .variant import Variant

__all__ = [
    "CapacityVector",
    "Graph",
    "MultiGraph",
    "SolveResult",
    "Variant",
    "solve",
    "TmatchError",
    "InputFormatError",
    "ValidationError",
    "NotVertexInducedError",
    "InfeasibleError",
    "InstanceTooLargeError",
    "InternalError",
]

__version__ = "0.1.0"
