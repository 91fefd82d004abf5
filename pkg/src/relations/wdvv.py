"""
WDVV relations glued into vertices of decorated graphs.

For four half-edges h1..h4 at a vertex v with trivial decoration, the
relation is the sum over splittings of v with {h1,h2} | {h3,h4} minus the
sum with {h1,h3} | {h2,h4}, the remaining half-edges of v distributed in
all possible ways.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from src.core import GraphException
from src.core.logging import progress
from src.graphs.enumeration import enumerate_graphs
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import split_vertex_with_map
from src.strata.decoration import Decoration, DecoratedStratum, DecorationPolynomial
from src.strata.normal_form import NormalFormBasis, normal_form_decorations
from src.strata.substacks import SubstackSpec
from src.strata.taut_class import Ambient, TautClass, make_class

logger = logging.getLogger(__name__)

RelationVector = Dict[int, Fraction]

PAIRINGS = {"13|24": ((0, 2), (1, 3)), "14|23": ((0, 3), (1, 2))}


def _extend(decoration: Decoration) -> Decoration:
    """Decoration on a graph after split_vertex (two new half-edges, one new vertex)."""
    return Decoration(psi=decoration.psi + (0, 0), kappa=decoration.kappa + ((),))


def _split_terms(
    g: PrestableGraph,
    poly: DecorationPolynomial,
    v: int,
    side1: Sequence[int],
    side2: Sequence[int],
    rest: Sequence[int],
    sign: int,
) -> Iterator[Tuple[DecoratedStratum, Fraction]]:
    for r in range(len(rest) + 1):
        for chosen in combinations(rest, r):
            others = [h for h in rest if h not in chosen]
            split = split_vertex_with_map(g, v, list(side1) + list(chosen), list(side2) + others)
            for decoration, coeff in poly.items():
                yield DecoratedStratum(split.graph, _extend(decoration)), coeff * sign


def wdvv_on_vertex(
    g: PrestableGraph,
    alpha: Union[Decoration, DecorationPolynomial],
    v: int,
    half_edges: Sequence[int],
    pairing: str = "13|24",
) -> TautClass:
    """
    WDVV relation (12|34) - (13|24) glued into vertex v.

    Args:
        g: Graph carrying the relation.
        alpha: Decoration (or expanded normal-form polynomial) of g, trivial at v.
        v: Vertex with at least four half-edges.
        half_edges: Four distinct half-edges (h1, h2, h3, h4) at v.
        pairing: Second splitting, "13|24" or "14|23".

    Returns:
        The relation as a class; every term is in normal form when alpha is.

    Raises:
        GraphException: If a precondition fails.
    """
    poly = alpha if isinstance(alpha, DecorationPolynomial) else DecorationPolynomial.monomial(alpha)
    at_v = g.vertex_half_edges(v)
    if len(at_v) < 4:
        raise GraphException(f"vertex {v} has {len(at_v)} < 4 half-edges", invariant="wdvv")
    if len(set(half_edges)) != 4 or not set(half_edges) <= set(at_v):
        raise GraphException(f"{list(half_edges)} are not four distinct half-edges at {v}", invariant="wdvv")
    if any(not d.is_trivial_at(g, v) for d, _ in poly.items()):
        raise GraphException(f"decoration is not trivial at vertex {v}", invariant="wdvv")
    if pairing not in PAIRINGS:
        raise GraphException(f"unknown pairing '{pairing}'", invariant="wdvv")

    h = list(half_edges)
    rest = [x for x in at_v if x not in h]
    (a1, a2), (b1, b2) = PAIRINGS[pairing]
    pairs = list(_split_terms(g, poly, v, [h[0], h[1]], [h[2], h[3]], rest, 1))
    pairs += list(_split_terms(g, poly, v, [h[a1], h[a2]], [h[b1], h[b2]], rest, -1))
    return make_class(pairs, Ambient(g.n))


def _normalized(vector: RelationVector) -> Tuple[Tuple[int, Fraction], ...]:
    lead = vector[min(vector)]
    return tuple(sorted((i, x / lead) for i, x in vector.items()))


def enumerate_wdvv_relations(
    n: int,
    d: int,
    spec: SubstackSpec,
    basis: NormalFormBasis,
) -> List[RelationVector]:
    """
    All glued WDVV relations of codimension d, in basis coordinates.

    Args:
        n: Number of markings.
        d: Codimension.
        spec: Open substack; terms on graphs outside it are dropped.
        basis: enumerate_normal_form_basis(n, d, spec).

    Returns:
        Deduplicated nonzero relation vectors, each scaled to leading entry 1.

    Raises:
        ValueError: If the basis was built for different parameters.
    """
    if basis.n != n or basis.degree != d or basis.spec != spec:
        raise ValueError(f"basis is for (n={basis.n}, d={basis.degree}, {basis.spec.name})")
    seen = set()
    relations: List[RelationVector] = []
    seeds = [
        (p, g)
        for p in range(1, d + 1)
        for g in enumerate_graphs(n, p - 1)
        if spec.allows(g) and any(g.valence(v) >= 4 for v in range(g.num_vertices))
    ]
    for p, g in progress(seeds, desc=f"wdvv n={n} d={d}"):
        for v in range(g.num_vertices):
            at_v = g.vertex_half_edges(v)
            if len(at_v) < 4:
                continue
            for poly in normal_form_decorations(g, d - p, trivial_at=[v]):
                for quadruple in combinations(at_v, 4):
                    for pairing in PAIRINGS:
                        relation = wdvv_on_vertex(g, poly, v, quadruple, pairing)
                        coords = basis.coordinates(relation)
                        if not coords:
                            continue
                        key = _normalized(coords)
                        if key in seen:
                            continue
                        seen.add(key)
                        relations.append(dict(key))
    logger.debug("wdvv relations n=%d d=%d spec=%s: %d vectors", n, d, spec.name, len(relations))
    return relations
