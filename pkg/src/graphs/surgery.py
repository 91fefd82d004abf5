"""
Graph surgery - contraction, vertex splitting, leg changes and gluing.

Every operation returns a new PrestableGraph together with the maps the
calculus layer needs to transport decorations (old vertex/half-edge ids to
new ones).
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core import GraphException
from src.graphs.prestable import PrestableGraph


@dataclass(frozen=True)
class Contraction:
    """Contracted graph with old -> new maps (contracted half-edges are absent)."""

    graph: PrestableGraph
    vertex_map: Tuple[int, ...]
    half_edge_map: Dict[int, int]


@dataclass(frozen=True)
class Split:
    """Result of split_vertex: the new vertex and the two new half-edges."""

    graph: PrestableGraph
    new_vertex: int
    half_edge_old_side: int
    half_edge_new_side: int


@dataclass(frozen=True)
class Gluing:
    """
    Result of gluing graphs into vertices.

    Attributes:
        graph: Composite graph. Outer half-edge ids are unchanged.
        vertex_maps: Outer vertex -> tuple mapping inner vertices to new ids.
        half_edge_maps: Outer vertex -> tuple mapping inner half-edges to new
            ids (inner legs map to the matched outer half-edge).
        outer_vertex_map: Outer vertex -> new id for vertices left untouched.
    """

    graph: PrestableGraph
    vertex_maps: Dict[int, Tuple[int, ...]]
    half_edge_maps: Dict[int, Tuple[int, ...]]
    outer_vertex_map: Dict[int, int]


def contract_edges(g: PrestableGraph, half_edges: Iterable[int]) -> Contraction:
    """
    Contract a set of edges, each given by either of its half-edges.

    Raises:
        GraphException: If a half-edge is a leg or the edges contain a cycle
            (self-edge contraction is rejected in genus-0 mode).
    """
    parent = list(range(g.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    removed = set()
    for h in half_edges:
        if g.is_leg(h):
            raise GraphException(f"half-edge {h} is a leg, not an edge", invariant="involution")
        k = g.involution[h]
        if h in removed:
            continue
        a, b = find(g.half_edges[h]), find(g.half_edges[k])
        if a == b:
            raise GraphException("contracting a self-edge is not allowed in genus-0 mode", invariant="tree")
        parent[max(a, b)] = min(a, b)
        removed.update((h, k))

    roots = sorted({find(v) for v in range(g.num_vertices)})
    root_index = {r: i for i, r in enumerate(roots)}
    vertex_map = tuple(root_index[find(v)] for v in range(g.num_vertices))
    genus = [0] * len(roots)
    for v in range(g.num_vertices):
        genus[vertex_map[v]] += g.genus[v]

    kept = [h for h in range(g.num_half_edges) if h not in removed]
    half_edge_map = {h: i for i, h in enumerate(kept)}
    graph = PrestableGraph(
        genus=tuple(genus),
        half_edges=tuple(vertex_map[g.half_edges[h]] for h in kept),
        involution=tuple(half_edge_map[g.involution[h]] for h in kept),
        legs=tuple(half_edge_map[h] for h in g.legs),
    )
    return Contraction(graph=graph, vertex_map=vertex_map, half_edge_map=half_edge_map)


def contract_edge(g: PrestableGraph, e: int) -> PrestableGraph:
    """Contract the edge through half-edge e."""
    return contract_edges(g, [e]).graph


def split_vertex_with_map(g: PrestableGraph, v: int, s1: Sequence[int], s2: Sequence[int]) -> Split:
    """
    Replace v by two vertices joined by a new edge.

    The vertex v keeps s1 and a new half-edge H; a new vertex V gets s2 and
    half-edge H+1 (H, V being the old half-edge and vertex counts). All other
    ids are unchanged.
    """
    at_v = set(g.vertex_half_edges(v))
    first, second = set(s1), set(s2)
    if first & second or first | second != at_v or len(first) + len(second) != len(s1) + len(s2):
        raise GraphException(f"({sorted(s1)}, {sorted(s2)}) is not a partition of H({v})", invariant="partition")
    V, H = g.num_vertices, g.num_half_edges
    half_edges = list(g.half_edges)
    for h in second:
        half_edges[h] = V
    half_edges.extend([v, V])
    graph = PrestableGraph(
        genus=g.genus + (0,),
        half_edges=tuple(half_edges),
        involution=g.involution + (H + 1, H),
        legs=g.legs,
    )
    return Split(graph=graph, new_vertex=V, half_edge_old_side=H, half_edge_new_side=H + 1)


def split_vertex(g: PrestableGraph, v: int, s1: Sequence[int], s2: Sequence[int]) -> PrestableGraph:
    """Split vertex v along the partition (s1, s2) of its half-edges."""
    return split_vertex_with_map(g, v, s1, s2).graph


def add_leg(g: PrestableGraph, v: int) -> Tuple[PrestableGraph, int]:
    """Attach marking n+1 at vertex v; returns the graph and the new half-edge."""
    h = g.num_half_edges
    graph = PrestableGraph(
        genus=g.genus,
        half_edges=g.half_edges + (v,),
        involution=g.involution + (h,),
        legs=g.legs + (h,),
    )
    return graph, h


def attach_leaf(g: PrestableGraph, v: int) -> PrestableGraph:
    """Attach a new genus-0 vertex without legs to v by a new edge."""
    V, H = g.num_vertices, g.num_half_edges
    return PrestableGraph(
        genus=g.genus + (0,),
        half_edges=g.half_edges + (v, V),
        involution=g.involution + (H + 1, H),
        legs=g.legs,
    )


def remove_half_edges(
    genus: Sequence[int],
    half_edges: Sequence[int],
    involution: Sequence[int],
    legs: Sequence[int],
    drop_vertices: Iterable[int] = (),
    drop_half_edges: Iterable[int] = (),
) -> Tuple[PrestableGraph, Dict[int, int], Dict[int, int]]:
    """
    Assemble a graph from raw arrays, deleting some vertices and half-edges.

    The caller is responsible for the remaining arrays describing a valid
    graph (partners of deleted half-edges must be re-paired beforehand).

    Returns:
        (graph, vertex_map, half_edge_map) for the surviving ids.
    """
    dv, dh = set(drop_vertices), set(drop_half_edges)
    vertices = [v for v in range(len(genus)) if v not in dv]
    vertex_map = {v: i for i, v in enumerate(vertices)}
    kept = [h for h in range(len(half_edges)) if h not in dh]
    half_edge_map = {h: i for i, h in enumerate(kept)}
    try:
        graph = PrestableGraph(
            genus=tuple(genus[v] for v in vertices),
            half_edges=tuple(vertex_map[half_edges[h]] for h in kept),
            involution=tuple(half_edge_map[involution[h]] for h in kept),
            legs=tuple(half_edge_map[h] for h in legs),
        )
    except KeyError as e:
        raise GraphException(f"dangling reference {e} after deletion", invariant="involution")
    return graph, vertex_map, half_edge_map


def glue_at_vertices(
    outer: PrestableGraph,
    inserts: Mapping[int, Tuple[PrestableGraph, Mapping[int, int]]],
) -> Gluing:
    """
    Glue graphs into several vertices of outer at once.

    Args:
        outer: The outer graph.
        inserts: Vertex v -> (inner graph, matching from inner marking labels
            to the half-edges of v). Inner vertex 0 reuses the id v; further
            inner vertices and inner edge half-edges are appended.

    Returns:
        The composite graph with transport maps.

    Raises:
        GraphException: On an arity mismatch or a matching that is not a
            bijection onto H(v).
    """
    genus = list(outer.genus)
    half_edges = list(outer.half_edges)
    involution = list(outer.involution)
    vertex_maps: Dict[int, Tuple[int, ...]] = {}
    half_edge_maps: Dict[int, Tuple[int, ...]] = {}

    for v in sorted(inserts):
        inner, matching = inserts[v]
        at_v = outer.vertex_half_edges(v)
        if inner.n != len(at_v):
            raise GraphException(
                f"inner graph has {inner.n} markings but vertex {v} has {len(at_v)} half-edges",
                invariant="arity",
            )
        if sorted(matching) != list(range(1, inner.n + 1)) or sorted(matching.values()) != sorted(at_v):
            raise GraphException(f"matching {dict(matching)} is not a bijection onto H({v})", invariant="arity")

        vmap: List[int] = []
        for w in range(inner.num_vertices):
            if w == 0:
                vmap.append(v)
                genus[v] = inner.genus[0]
            else:
                vmap.append(len(genus))
                genus.append(inner.genus[w])
        hmap: List[Optional[int]] = [None] * inner.num_half_edges
        for i, h in enumerate(inner.legs):
            hmap[h] = matching[i + 1]
        for h in range(inner.num_half_edges):
            if hmap[h] is None:
                hmap[h] = len(half_edges)
                half_edges.append(-1)
                involution.append(-1)
        for h in range(inner.num_half_edges):
            new = hmap[h]
            half_edges[new] = vmap[inner.half_edges[h]]
            if not inner.is_leg(h):
                involution[new] = hmap[inner.involution[h]]
        vertex_maps[v] = tuple(vmap)
        half_edge_maps[v] = tuple(hmap)

    graph = PrestableGraph(
        genus=tuple(genus),
        half_edges=tuple(half_edges),
        involution=tuple(involution),
        legs=outer.legs,
    )
    untouched = {v: v for v in range(outer.num_vertices) if v not in inserts}
    return Gluing(graph=graph, vertex_maps=vertex_maps, half_edge_maps=half_edge_maps, outer_vertex_map=untouched)


def insert_graph_at_vertex(
    outer: PrestableGraph,
    v: int,
    inner: PrestableGraph,
    matching: Mapping[int, int],
) -> PrestableGraph:
    """
    Replace vertex v of outer by inner.

    Args:
        outer: The outer graph.
        v: Vertex to replace.
        inner: Graph with n(v) markings.
        matching: Inner marking label -> half-edge of v.
    """
    return glue_at_vertices(outer, {v: (inner, matching)}).graph
