"""Exact zero forcing propagation and throttling for small graphs."""

from .graph import Graph, GuardError, EdgeKind, generate, parse_graph6, write_graph6
from .rules import Force, ForceKind, ForcingState, RuleId
from .propagation import INF, Schedule, propagate_force_set, pt_of_set
from .throttling import ThrottlingResult, throttling_number

__all__ = [
    "Graph", "GuardError", "EdgeKind", "generate", "parse_graph6", "write_graph6",
    "Force", "ForceKind", "ForcingState", "RuleId",
    "INF", "Schedule", "propagate_force_set", "pt_of_set",
    "ThrottlingResult", "throttling_number",
]
