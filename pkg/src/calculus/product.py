"""
Intersection product of tautological classes.

[A, alpha] . [B, beta] is the sum over generic (A,B)-structures G of the
pushforward from G of the pulled-back decorations times the top Chern
class of the excess bundle, prod over shared edges of (-psi_h - psi_h').
"""

import logging
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, List, Sequence, Tuple

from src.calculus.structures import GenericStructure, generic_structures
from src.core import AmbientMismatchException
from src.graphs.prestable import PrestableGraph
from src.strata.decoration import Decoration, DecoratedStratum, DecorationPolynomial, kappa_vector
from src.strata.taut_class import TautClass, make_class

logger = logging.getLogger(__name__)


def _psi_monomial(g: PrestableGraph, h: int) -> Decoration:
    psi = [0] * g.num_half_edges
    psi[h] = 1
    return Decoration(tuple(psi), ((),) * g.num_vertices)


def _kappa_monomial(g: PrestableGraph, w: int, a: int) -> Decoration:
    kappa = [()] * g.num_vertices
    kappa[w] = kappa_vector({a: 1})
    return Decoration((0,) * g.num_half_edges, tuple(kappa))


def transport_decoration(
    g: PrestableGraph,
    decoration: Decoration,
    vertex_map: Sequence[int],
    half_edge_from: Sequence[int],
    skip_vertices: frozenset = frozenset(),
) -> DecorationPolynomial:
    """
    Pull a decoration back along a contraction g -> X.

    Args:
        g: Source graph of the contraction.
        decoration: Decoration on X.
        vertex_map: Vertex of X for each vertex of g.
        half_edge_from: Half-edge of g for each half-edge of X.
        skip_vertices: Vertices of g left out of kappa sums (bubbles).

    Returns:
        psi_h goes to the corresponding half-edge; kappa_{v,a} goes to the
        sum of kappa_{w,a} over the preimages w of v.
    """
    psi = [0] * g.num_half_edges
    for h, e in enumerate(decoration.psi):
        if e:
            psi[half_edge_from[h]] += e
    poly = DecorationPolynomial.monomial(Decoration(tuple(psi), ((),) * g.num_vertices))
    preimages: Dict[int, List[int]] = {}
    for w, v in enumerate(vertex_map):
        if w not in skip_vertices:
            preimages.setdefault(v, []).append(w)
    for v, kappa in enumerate(decoration.kappa):
        for a, e in enumerate(kappa, start=1):
            if not e:
                continue
            targets = preimages.get(v, [])
            if not targets:
                return DecorationPolynomial()
            factor = DecorationPolynomial({_kappa_monomial(g, w, a): 1 for w in targets})
            for _ in range(e):
                poly = poly * factor
    return poly


def excess_class(g: PrestableGraph, shared: Sequence[Tuple[int, int]]) -> DecorationPolynomial:
    """prod over shared edges (h, h') of (-psi_h - psi_h')."""
    factors = [DecorationPolynomial({_psi_monomial(g, h): -1, _psi_monomial(g, k): -1}) for h, k in shared]
    return reduce(lambda x, y: x * y, factors, DecorationPolynomial.monomial(Decoration.trivial(g)))


def _structure_terms(
    structure: GenericStructure,
    first: DecoratedStratum,
    second: DecoratedStratum,
) -> List[Tuple[DecoratedStratum, Fraction]]:
    g = structure.graph
    poly = (
        transport_decoration(g, first.decoration, structure.vertex_to_a, structure.half_edge_from_a, structure.contracted)
        * transport_decoration(
            g, second.decoration, structure.vertex_to_b, structure.half_edge_from_b, structure.contracted
        )
        * excess_class(g, structure.shared)
    )
    return [(DecoratedStratum(g, d, structure.contracted), c) for d, c in poly.items()]


@lru_cache(maxsize=200_000)
def stratum_product(
    first: DecoratedStratum,
    second: DecoratedStratum,
    universal: bool = False,
) -> Tuple[Tuple[DecoratedStratum, Fraction], ...]:
    """Expanded product of two decorated strata as (stratum, coefficient) pairs."""
    terms: List[Tuple[DecoratedStratum, Fraction]] = []
    for structure in generic_structures(
        first.graph, second.graph, first.contracted, second.contracted, universal
    ):
        terms.extend(_structure_terms(structure, first, second))
    return tuple(terms)


def product(c1: TautClass, c2: TautClass) -> TautClass:
    """
    Intersection product of two classes on the same ambient.

    Raises:
        AmbientMismatchException: If the ambients differ.
    """
    if c1.ambient != c2.ambient:
        raise AmbientMismatchException(f"cannot multiply classes on {c1.ambient} and {c2.ambient}")
    pairs: List[Tuple[DecoratedStratum, Fraction]] = []
    for s1, x1 in c1.items():
        for s2, x2 in c2.items():
            for stratum, c in stratum_product(s1, s2, c1.ambient.universal):
                pairs.append((stratum, c * x1 * x2))
    result = make_class(pairs, c1.ambient)
    logger.debug("product: %d x %d terms -> %d terms", len(c1), len(c2), len(result))
    return result


def power(c: TautClass, exponent: int) -> TautClass:
    """c multiplied with itself exponent times (exponent 0 gives the fundamental class)."""
    result = TautClass.fundamental(c.ambient.n, c.ambient.universal)
    for _ in range(exponent):
        result = product(result, c)
    return result


def product_all(classes: Sequence[TautClass], n: int, universal: bool = False) -> TautClass:
    """Product of a sequence of classes (the fundamental class when empty)."""
    result = TautClass.fundamental(n, universal)
    for c in classes:
        result = product(result, c)
    return result
