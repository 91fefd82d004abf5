"""
Relations - WDVV relation spaces, Chow ranks and membership tests.
"""

from src.relations.export import relation_matrix_dict, relation_matrix_json, relation_matrix_market
from src.relations.ranks import chow_rank, is_zero, relation_matrix
from src.relations.wdvv import RelationVector, enumerate_wdvv_relations, wdvv_on_vertex

__all__ = [
    "RelationVector",
    "wdvv_on_vertex",
    "enumerate_wdvv_relations",
    "relation_matrix",
    "chow_rank",
    "is_zero",
    "relation_matrix_market",
    "relation_matrix_json",
    "relation_matrix_dict",
]
