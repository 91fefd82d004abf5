"""
Relation matrix export (Matrix-Market text and JSON).
"""

import json
from typing import Any, Dict, Optional

from src.relations.ranks import relation_matrix
from src.strata.substacks import SubstackSpec


def relation_matrix_market(n: int, d: int, spec: Optional[SubstackSpec] = None) -> str:
    _, matrix = relation_matrix(n, d, spec)
    return matrix.to_matrix_market()


def relation_matrix_dict(n: int, d: int, spec: Optional[SubstackSpec] = None) -> Dict[str, Any]:
    """Basis leading keys (hex) plus (row, col, "p/q") triplets, 0-based."""
    basis, matrix = relation_matrix(n, d, spec)
    triplets = []
    for i, row in enumerate(matrix.rows):
        for j in sorted(row):
            x = row[j]
            triplets.append([i, j, f"{x.numerator}/{x.denominator}"])
    return {
        "n": n,
        "d": d,
        "spec": basis.spec.name,
        "basis": [key.hex() for key in basis.leading_keys()],
        "shape": [matrix.num_rows, matrix.num_cols],
        "entries": triplets,
    }


def relation_matrix_json(n: int, d: int, spec: Optional[SubstackSpec] = None) -> str:
    return json.dumps(relation_matrix_dict(n, d, spec), separators=(",", ":"))
