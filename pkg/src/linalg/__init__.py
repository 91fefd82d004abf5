"""
Linalg - exact rational rank, span membership and kernels.
"""

from src.linalg.dense import bareiss_rank, rref
from src.linalg.sparse import (
    EchelonForm,
    SparseRationalMatrix,
    in_row_span,
    kernel_basis,
    modular_rank,
    multiply,
    rank,
)

__all__ = [
    "SparseRationalMatrix",
    "EchelonForm",
    "rank",
    "in_row_span",
    "kernel_basis",
    "modular_rank",
    "multiply",
    "bareiss_rank",
    "rref",
]
