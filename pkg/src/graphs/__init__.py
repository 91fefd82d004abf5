"""
Graphs - genus-0 prestable dual graphs, canonical labeling and surgery.
"""

from src.graphs.canonical import CanonicalForm, are_isomorphic, canonicalize, graph_key, isomorphisms
from src.graphs.enumeration import enumerate_graphs, enumerate_stable_graphs
from src.graphs.prestable import GraphReport, PrestableGraph, require_valid, validate
from src.graphs.surgery import (
    Contraction,
    Gluing,
    Split,
    add_leg,
    attach_leaf,
    contract_edge,
    contract_edges,
    glue_at_vertices,
    insert_graph_at_vertex,
    split_vertex,
    split_vertex_with_map,
)

__all__ = [
    "PrestableGraph",
    "GraphReport",
    "validate",
    "require_valid",
    "CanonicalForm",
    "canonicalize",
    "graph_key",
    "are_isomorphic",
    "isomorphisms",
    "enumerate_graphs",
    "enumerate_stable_graphs",
    "Contraction",
    "Gluing",
    "Split",
    "contract_edge",
    "contract_edges",
    "split_vertex",
    "split_vertex_with_map",
    "add_leg",
    "attach_leaf",
    "glue_at_vertices",
    "insert_graph_at_vertex",
]
