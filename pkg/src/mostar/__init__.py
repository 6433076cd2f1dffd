"""Mostar index, its degree-based upper bound Mo*, and the bounds on Mo*."""

__version__ = "0.1.0"

from .graph_core import (
    UNREACHABLE,
    Graph,
    GraphFormatError,
    bfs_distances,
    complement,
    enumerate_labeled,
    from_edge_list,
    parse_graph6,
    write_graph6,
)
from .indices import full_report, irregularity, mostar, mostar_star, transmissions

__all__ = [
    "UNREACHABLE",
    "Graph",
    "GraphFormatError",
    "bfs_distances",
    "complement",
    "enumerate_labeled",
    "from_edge_list",
    "parse_graph6",
    "write_graph6",
    "full_report",
    "irregularity",
    "mostar",
    "mostar_star",
    "transmissions",
]
