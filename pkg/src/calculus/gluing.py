"""
Gluing pushforward - substitute vertex classes into an outer graph.
"""

from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from src.core import GraphException
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import glue_at_vertices
from src.strata.decoration import Decoration, DecoratedStratum, add_kappa
from src.strata.taut_class import Ambient, TautClass, make_class


def default_matching(g: PrestableGraph, v: int) -> Dict[int, int]:
    """Marking i of a vertex class sits on the i-th half-edge of v (increasing ids)."""
    return {i + 1: h for i, h in enumerate(g.vertex_half_edges(v))}


def glue_strata(
    outer: PrestableGraph,
    pieces: Mapping[int, Tuple[DecoratedStratum, Mapping[int, int]]],
    base: Optional[Decoration] = None,
    contracted: Iterable[int] = (),
) -> DecoratedStratum:
    """
    Glue decorated strata into vertices of outer.

    Args:
        outer: Outer graph.
        pieces: Vertex -> (stratum with n(v) markings, marking -> half-edge of v).
        base: Decoration of outer; its data at glued vertices is discarded.
        contracted: Bubble vertices of outer (kept, never glued into).

    Returns:
        The composite decorated stratum.
    """
    gluing = glue_at_vertices(outer, {v: (s.graph, m) for v, (s, m) in pieces.items()})
    g = gluing.graph
    psi = [0] * g.num_half_edges
    kappa: List[Tuple[int, ...]] = [()] * g.num_vertices
    if base is not None:
        stripped = base
        for v in pieces:
            stripped = stripped.without_vertex(outer, v)
        psi[: len(stripped.psi)] = stripped.psi
        kappa[: len(stripped.kappa)] = stripped.kappa
    for v, (s, _) in pieces.items():
        if s.contracted:
            raise GraphException("cannot glue a universal-curve stratum into a vertex", invariant="bubble")
        hmap = gluing.half_edge_maps[v]
        vmap = gluing.vertex_maps[v]
        for h, e in enumerate(s.decoration.psi):
            if e:
                psi[hmap[h]] += e
        for w, k in enumerate(s.decoration.kappa):
            if k:
                kappa[vmap[w]] = add_kappa(kappa[vmap[w]], k)
    return DecoratedStratum(g, Decoration(tuple(psi), tuple(kappa)), frozenset(contracted))


def gluing_pushforward(
    outer: PrestableGraph,
    classes_at_vertices: Mapping[int, TautClass],
    matchings: Optional[Mapping[int, Mapping[int, int]]] = None,
    base: Optional[Decoration] = None,
    contracted: Iterable[int] = (),
    ambient: Optional[Ambient] = None,
) -> TautClass:
    """
    Multilinear gluing of vertex classes into outer.

    Args:
        outer: Outer graph.
        classes_at_vertices: Vertex -> class on the plain ambient with n(v)
            markings. Vertices not listed keep their base decoration.
        matchings: Optional vertex -> (marking -> half-edge); default is
            default_matching.
        base: Decoration of the outer graph at the remaining vertices.
        contracted: Bubble vertices of outer.
        ambient: Result ambient (default: plain, outer.n markings).

    Returns:
        The glued class.

    Raises:
        GraphException: On an arity mismatch.
    """
    ambient = ambient or Ambient(outer.n, bool(contracted))
    vertices = sorted(classes_at_vertices)
    for v in vertices:
        c = classes_at_vertices[v]
        if c.ambient.n != outer.valence(v) or c.ambient.universal:
            raise GraphException(
                f"class on {c.ambient} cannot be glued into vertex {v} with {outer.valence(v)} half-edges",
                invariant="arity",
            )
    match = {v: (matchings or {}).get(v) or default_matching(outer, v) for v in vertices}
    term_lists = [list(classes_at_vertices[v].items()) for v in vertices]
    pairs: List[Tuple[DecoratedStratum, Fraction]] = []
    for choice in cartesian(*term_lists):
        coeff = Fraction(1)
        pieces = {}
        for v, (s, c) in zip(vertices, choice):
            coeff *= c
            pieces[v] = (s, match[v])
        pairs.append((glue_strata(outer, pieces, base, contracted), coeff))
    if base is None and not vertices:
        pairs.append((DecoratedStratum.bare(outer, contracted), Fraction(1)))
    elif not vertices:
        pairs.append((DecoratedStratum(outer, base, frozenset(contracted)), Fraction(1)))
    return make_class(pairs, ambient)
