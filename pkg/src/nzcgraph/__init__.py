"""Non-zero component graphs of finite vector spaces: closed forms, explicit graphs, oracles."""
from .errors import NZCError
from .formulas import CliqueWinner, InvariantReport, invariant_report
from .graph import ComponentGraph, build_graph
from .kernels import BACKEND
from .space import GraphParams, Support, Vertex, validate_params

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CliqueWinner",
    "ComponentGraph",
    "GraphParams",
    "InvariantReport",
    "NZCError",
    "Support",
    "Vertex",
    "build_graph",
    "invariant_report",
    "validate_params",
]
