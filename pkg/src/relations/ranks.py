"""
Chow ranks and relation membership.
"""

import logging
from functools import lru_cache
from typing import Optional, Tuple

from src.core import DegreeException
from src.linalg.sparse import EchelonForm, SparseRationalMatrix, rank
from src.relations.wdvv import enumerate_wdvv_relations
from src.strata.normal_form import NormalFormBasis, enumerate_normal_form_basis
from src.strata.substacks import AllGraphs, SubstackSpec
from src.strata.taut_class import TautClass

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def relation_matrix(n: int, d: int, spec: Optional[SubstackSpec] = None) -> Tuple[NormalFormBasis, SparseRationalMatrix]:
    """Normal-form basis and the WDVV relation matrix over it."""
    spec = spec or AllGraphs()
    basis = enumerate_normal_form_basis(n, d, spec)
    matrix = SparseRationalMatrix(len(basis), enumerate_wdvv_relations(n, d, spec, basis))
    logger.debug("relation matrix n=%d d=%d: %s", n, d, matrix)
    return basis, matrix


@lru_cache(maxsize=1024)
def chow_rank(n: int, d: int, spec: Optional[SubstackSpec] = None) -> int:
    """
    Rank of CH^d of the open substack spec of the genus-0 n-marked stack.

    Returns:
        |basis| - rank(WDVV relation matrix).
    """
    if d < 0:
        return 0
    basis, matrix = relation_matrix(n, d, spec or AllGraphs())
    value = len(basis) - rank(matrix)
    logger.info("chow rank n=%d d=%d: %d", n, d, value)
    return value


def is_zero(c: TautClass, spec: Optional[SubstackSpec] = None) -> bool:
    """
    Decide whether a pure-codimension class vanishes in the Chow group.

    The class is normalized first, then tested for membership in the span
    of the WDVV relations of its degree.

    Raises:
        DegreeException: For mixed-degree input or universal-curve classes.
    """
    from src.calculus.rewriting import normalize

    if c.ambient.universal:
        raise DegreeException("is_zero needs a class on the plain stack")
    d = c.degree()
    if d is None:
        return True
    spec = spec or AllGraphs()
    normal = normalize(c)
    basis, matrix = relation_matrix(c.ambient.n, d, spec)
    coords = basis.coordinates(normal)
    if not coords:
        return True
    echelon = EchelonForm(matrix.num_cols)
    for row in matrix.rows:
        echelon.add(row)
    return echelon.contains(coords)
