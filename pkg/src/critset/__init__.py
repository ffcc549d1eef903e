"""Exact computation and structural analysis of critical independent sets."""

from .graph import (
    Graph,
    GraphFormatError,
    VertexSet,
    delete_vertex,
    difference,
    induced_subgraph,
    is_independent,
    neighborhood,
    parse_edge_list,
    parse_graph6,
    to_graph6,
)

__all__ = [
    "Graph",
    "GraphFormatError",
    "VertexSet",
    "delete_vertex",
    "difference",
    "induced_subgraph",
    "is_independent",
    "neighborhood",
    "parse_edge_list",
    "parse_graph6",
    "to_graph6",
]
