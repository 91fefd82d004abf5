"""
Generic (A,B)-structures - the components of the fibre product of two gluing maps.

A structure is a graph G with contractions onto A and onto B such that every
edge of G comes from A or from B. Candidates are built by gluing a tree into
each vertex of A; the edges of A that B does not see are contracted and the
result is matched against B by isomorphism. On the universal curve each
candidate additionally carries the set of its bubble vertices.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from src.graphs.canonical import canonicalize, isomorphisms
from src.graphs.enumeration import enumerate_graphs
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import contract_edges, glue_at_vertices

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenericStructure:
    """
    One generic (A,B)-structure.

    Attributes:
        graph: The graph G.
        vertex_to_a: Vertex of A each vertex of G contracts to.
        vertex_to_b: Vertex of B each vertex of G contracts to.
        half_edge_from_a: Half-edge of G for each half-edge of A.
        half_edge_from_b: Half-edge of G for each half-edge of B.
        shared: Edges of G coming from both A and B, as (h, h') pairs.
        contracted: Bubble vertices of G (universal curve only).
    """

    graph: PrestableGraph
    vertex_to_a: Tuple[int, ...]
    vertex_to_b: Tuple[int, ...]
    half_edge_from_a: Tuple[int, ...]
    half_edge_from_b: Tuple[int, ...]
    shared: Tuple[Tuple[int, int], ...]
    contracted: FrozenSet[int] = frozenset()

    @property
    def excess_rank(self) -> int:
        return len(self.shared)


def _is_trivial(g: PrestableGraph, contracted: FrozenSet[int]) -> bool:
    return g.num_vertices == 1 and not contracted


def _vertex_trees(
    a: PrestableGraph,
    contracted_a: FrozenSet[int],
    budget: int,
) -> Iterator[Tuple[int, Dict[int, PrestableGraph]]]:
    """Choices of one tree per vertex of A with at most budget new edges in total."""
    slots = [v for v in range(a.num_vertices) if v not in contracted_a]

    def extend(i: int, left: int) -> Iterator[Tuple[int, Dict[int, PrestableGraph]]]:
        if i == len(slots):
            yield budget - left, {}
            return
        v = slots[i]
        for k in range(left + 1):
            for tree in enumerate_graphs(a.valence(v), k):
                for used, rest in extend(i + 1, left - k):
                    chosen = dict(rest)
                    if k:
                        chosen[v] = tree
                    yield used, chosen

    yield from extend(0, budget)


def _bubble_choices(
    g: PrestableGraph,
    vertex_to_a: Sequence[int],
    vertex_to_b: Sequence[int],
    contracted_a: FrozenSet[int],
    contracted_b: FrozenSet[int],
) -> List[FrozenSet[int]]:
    """
    Admissible bubble sets of a candidate on the universal curve.

    Bubbles are 3-valent and carry the curve point, so G has at most one;
    the preimage of a bubble is that single bubble, and every ordinary
    vertex of A and of B keeps an ordinary vertex in its preimage.
    """
    star = g.half_edges[g.leg(g.n)]
    options: List[FrozenSet[int]] = []
    for bubbles in (frozenset(), frozenset({star})):
        if bubbles and g.valence(star) != 3:
            continue
        ok = True
        for target_map, target_bubbles in ((vertex_to_a, contracted_a), (vertex_to_b, contracted_b)):
            preimages: Dict[int, List[int]] = {}
            for w, v in enumerate(target_map):
                preimages.setdefault(v, []).append(w)
            for v, ws in preimages.items():
                if v in target_bubbles:
                    if ws != [star] or star not in bubbles:
                        ok = False
                elif all(w in bubbles for w in ws):
                    ok = False
        if ok:
            options.append(bubbles)
    return options


def _structure_key(s: GenericStructure) -> bytes:
    a_of = {h: i for i, h in enumerate(s.half_edge_from_a)}
    b_of = {h: i for i, h in enumerate(s.half_edge_from_b)}
    vertex_colors = [(s.vertex_to_a[w], s.vertex_to_b[w], w in s.contracted) for w in range(s.graph.num_vertices)]
    half_edge_colors = [(a_of.get(h, -1), b_of.get(h, -1)) for h in range(s.graph.num_half_edges)]
    return canonicalize(s.graph, vertex_colors=vertex_colors, half_edge_colors=half_edge_colors).key


@lru_cache(maxsize=50_000)
def generic_structures(
    a: PrestableGraph,
    b: PrestableGraph,
    contracted_a: FrozenSet[int] = frozenset(),
    contracted_b: FrozenSet[int] = frozenset(),
    universal: bool = False,
) -> Tuple[GenericStructure, ...]:
    """
    All generic (A,B)-structures up to isomorphism.

    Args:
        a: First graph.
        b: Second graph (same markings as a).
        contracted_a: Bubble vertices of a.
        contracted_b: Bubble vertices of b.
        universal: Whether the graphs live on the universal curve.

    Returns:
        One representative per isomorphism class of structures.
    """
    universal = universal or bool(contracted_a or contracted_b)
    if _is_trivial(a, contracted_a):
        return (
            GenericStructure(
                graph=b,
                vertex_to_a=(0,) * b.num_vertices,
                vertex_to_b=tuple(range(b.num_vertices)),
                half_edge_from_a=tuple(b.leg(a.marking(h)) for h in range(a.num_half_edges)),
                half_edge_from_b=tuple(range(b.num_half_edges)),
                shared=(),
                contracted=frozenset(contracted_b),
            ),
        )
    if _is_trivial(b, contracted_b):
        return (
            GenericStructure(
                graph=a,
                vertex_to_a=tuple(range(a.num_vertices)),
                vertex_to_b=(0,) * a.num_vertices,
                half_edge_from_a=tuple(range(a.num_half_edges)),
                half_edge_from_b=tuple(a.leg(b.marking(h)) for h in range(b.num_half_edges)),
                shared=(),
                contracted=frozenset(contracted_a),
            ),
        )

    found: Dict[bytes, GenericStructure] = {}
    a_edges = a.edges()
    for new_edges, trees in _vertex_trees(a, contracted_a, b.num_edges):
        gluing = glue_at_vertices(
            a,
            {v: (tree, {i + 1: h for i, h in enumerate(a.vertex_half_edges(v))}) for v, tree in trees.items()},
        )
        g = gluing.graph
        vertex_to_a = [0] * g.num_vertices
        for v in range(a.num_vertices):
            vertex_to_a[v] = v
        for v, vmap in gluing.vertex_maps.items():
            for w in vmap:
                vertex_to_a[w] = v
        for kept in combinations(a_edges, b.num_edges - new_edges):
            dropped = [h for h, k in a_edges if (h, k) not in kept]
            contraction = contract_edges(g, dropped)
            for vmap, hmap in isomorphisms(contraction.graph, b):
                vertex_to_b = tuple(vmap[contraction.vertex_map[w]] for w in range(g.num_vertices))
                from_b: List[Optional[int]] = [None] * b.num_half_edges
                for h, image in contraction.half_edge_map.items():
                    from_b[hmap[image]] = h
                bubble_sets = (
                    _bubble_choices(g, vertex_to_a, vertex_to_b, contracted_a, contracted_b)
                    if universal
                    else [frozenset()]
                )
                for bubbles in bubble_sets:
                    structure = GenericStructure(
                        graph=g,
                        vertex_to_a=tuple(vertex_to_a),
                        vertex_to_b=vertex_to_b,
                        half_edge_from_a=tuple(range(a.num_half_edges)),
                        half_edge_from_b=tuple(from_b),
                        shared=tuple(kept),
                        contracted=bubbles,
                    )
                    found.setdefault(_structure_key(structure), structure)

    structures = tuple(found[key] for key in sorted(found))
    logger.debug("generic structures: %d (|E(A)|=%d, |E(B)|=%d)", len(structures), a.num_edges, b.num_edges)
    return structures
