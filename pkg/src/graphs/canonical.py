"""
Canonical labeling - isomorphism-invariant keys for (decorated) trees.

Vertices are colored by their local data, the coloring is refined until
stable, and remaining ties are broken by individualizing one vertex of the
first non-singleton cell. On colored trees the stable cells are exactly the
automorphism orbits, so one individualization path suffices and the
automorphism count is the product of the individualized cell sizes.
"""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from src.core import GraphException
from src.graphs.prestable import PrestableGraph

Color = Hashable


@dataclass(frozen=True)
class CanonicalForm:
    """
    Result of canonicalize().

    Attributes:
        key: Bytes equal for two inputs iff they are isomorphic.
        graph: The canonical representative.
        vertex_map: Old vertex index -> canonical vertex index.
        half_edge_map: Old half-edge id -> canonical half-edge id.
        automorphisms: Order of the automorphism group (with decorations).
        vertex_colors: Vertex colors in canonical order.
        half_edge_colors: Half-edge colors in canonical order.
    """

    key: bytes
    graph: PrestableGraph
    vertex_map: Tuple[int, ...]
    half_edge_map: Tuple[int, ...]
    automorphisms: int
    vertex_colors: Tuple[Any, ...]
    half_edge_colors: Tuple[Any, ...]

    @property
    def hex(self) -> str:
        return self.key.hex()


def _rank(signatures: Sequence[Any]) -> List[int]:
    order = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [order[s] for s in signatures]


def _refine(colors: List[int], adjacency: List[List[Tuple[int, Any]]]) -> List[int]:
    while True:
        signatures = [
            (colors[v], tuple(sorted((edge, colors[w]) for w, edge in adjacency[v])))
            for v in range(len(colors))
        ]
        refined = _rank(signatures)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _adjacency(g: PrestableGraph, half_edge_colors: Sequence[Any]) -> List[List[Tuple[int, Any]]]:
    adjacency: List[List[Tuple[int, Any]]] = [[] for _ in range(g.num_vertices)]
    for h, k in g.edges():
        v, w = g.half_edges[h], g.half_edges[k]
        adjacency[v].append((w, (half_edge_colors[h], half_edge_colors[k])))
        adjacency[w].append((v, (half_edge_colors[k], half_edge_colors[h])))
    return adjacency


def _local_colors(g: PrestableGraph, vertex_colors: Sequence[Any], half_edge_colors: Sequence[Any]) -> List[Any]:
    raw = []
    for v in range(g.num_vertices):
        legs = tuple(
            sorted((g.marking(h), half_edge_colors[h]) for h in g.vertex_half_edges(v) if g.is_leg(h))
        )
        raw.append((g.genus[v], vertex_colors[v], legs, g.valence(v)))
    return raw


@lru_cache(maxsize=200_000)
def _canonicalize(
    g: PrestableGraph,
    vertex_colors: Tuple[Any, ...],
    half_edge_colors: Tuple[Any, ...],
) -> CanonicalForm:
    V = g.num_vertices
    if V == 0 or g.num_edges != V - 1:
        raise GraphException(f"canonical labeling needs a tree, got {g!r}", invariant="tree")

    adjacency = _adjacency(g, half_edge_colors)
    colors = _refine(_rank(_local_colors(g, vertex_colors, half_edge_colors)), adjacency)
    automorphisms = 1
    while len(set(colors)) < V:
        counts = Counter(colors)
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(V) if colors[v] == target]
        automorphisms *= len(cell)
        chosen = cell[0]
        colors = _rank([(c, 0 if v == chosen else 1) for v, c in enumerate(colors)])
        colors = _refine(colors, adjacency)

    vertex_map = tuple(colors)
    order = sorted(range(V), key=lambda v: vertex_map[v])
    half_edge_map = [0] * g.num_half_edges
    next_id = 0
    for v in order:
        def sort_key(h: int) -> Tuple[int, int]:
            if g.is_leg(h):
                return (0, g.marking(h))
            return (1, vertex_map[g.neighbor(h)])

        for h in sorted(g.vertex_half_edges(v), key=sort_key):
            half_edge_map[h] = next_id
            next_id += 1

    inverse = [0] * g.num_half_edges
    for h, new in enumerate(half_edge_map):
        inverse[new] = h
    graph = PrestableGraph(
        genus=tuple(g.genus[v] for v in order),
        half_edges=tuple(vertex_map[g.half_edges[h]] for h in inverse),
        involution=tuple(half_edge_map[g.involution[h]] for h in inverse),
        legs=tuple(half_edge_map[h] for h in g.legs),
    )
    new_vertex_colors = tuple(vertex_colors[v] for v in order)
    new_half_edge_colors = tuple(half_edge_colors[h] for h in inverse)
    payload = (graph.genus, graph.half_edges, graph.involution, graph.legs, new_vertex_colors, new_half_edge_colors)
    return CanonicalForm(
        key=repr(payload).encode("utf-8"),
        graph=graph,
        vertex_map=vertex_map,
        half_edge_map=tuple(half_edge_map),
        automorphisms=automorphisms,
        vertex_colors=new_vertex_colors,
        half_edge_colors=new_half_edge_colors,
    )


def canonicalize(
    g: PrestableGraph,
    decoration: Optional[Any] = None,
    vertex_colors: Optional[Sequence[Any]] = None,
    half_edge_colors: Optional[Sequence[Any]] = None,
) -> CanonicalForm:
    """
    Compute the canonical form of a genus-0 graph.

    Args:
        g: A tree.
        decoration: Optional object with a colors(g) method returning
            (vertex_colors, half_edge_colors); combined with explicit colors.
        vertex_colors: Extra per-vertex colors (comparable, hashable).
        half_edge_colors: Extra per-half-edge colors.

    Returns:
        The canonical form; equal keys iff isomorphic with matching colors.

    Raises:
        GraphException: If g is not a tree.
    """
    vcol: List[Any] = [()] * g.num_vertices if vertex_colors is None else list(vertex_colors)
    hcol: List[Any] = [()] * g.num_half_edges if half_edge_colors is None else list(half_edge_colors)
    if decoration is not None:
        dv, dh = decoration.colors(g)
        vcol = list(dv) if vertex_colors is None else [(a, b) for a, b in zip(vcol, dv)]
        hcol = list(dh) if half_edge_colors is None else [(a, b) for a, b in zip(hcol, dh)]
    return _canonicalize(g, tuple(vcol), tuple(hcol))


def graph_key(g: PrestableGraph) -> bytes:
    """Canonical key of an undecorated graph."""
    return canonicalize(g).key


def are_isomorphic(g1: PrestableGraph, g2: PrestableGraph) -> bool:
    return graph_key(g1) == graph_key(g2)


def isomorphisms(
    g1: PrestableGraph,
    g2: PrestableGraph,
    vertex_colors1: Optional[Sequence[Any]] = None,
    half_edge_colors1: Optional[Sequence[Any]] = None,
    vertex_colors2: Optional[Sequence[Any]] = None,
    half_edge_colors2: Optional[Sequence[Any]] = None,
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Enumerate color- and marking-preserving isomorphisms g1 -> g2.

    Yields:
        (vertex_map, half_edge_map) pairs indexed by g1 ids.
    """
    if g1.num_vertices != g2.num_vertices or g1.n != g2.n or g1.num_half_edges != g2.num_half_edges:
        return
    vc1 = [()] * g1.num_vertices if vertex_colors1 is None else list(vertex_colors1)
    hc1 = [()] * g1.num_half_edges if half_edge_colors1 is None else list(half_edge_colors1)
    vc2 = [()] * g2.num_vertices if vertex_colors2 is None else list(vertex_colors2)
    hc2 = [()] * g2.num_half_edges if half_edge_colors2 is None else list(half_edge_colors2)
    local1 = _local_colors(g1, vc1, hc1)
    local2 = _local_colors(g2, vc2, hc2)

    # BFS order on g1: each non-root vertex is reached through one parent half-edge
    order: List[Tuple[int, Optional[int]]] = [(0, None)]
    seen = {0}
    for v, _ in order:
        for h in g1.vertex_half_edges(v):
            if not g1.is_leg(h):
                w = g1.neighbor(h)
                if w not in seen:
                    seen.add(w)
                    order.append((w, h))
    if len(order) != g1.num_vertices:
        return

    vmap: Dict[int, int] = {}
    hmap: Dict[int, int] = {}
    used = set()

    def assign(v: int, image: int, via: Optional[int], via_image: Optional[int]) -> Optional[List[int]]:
        if image in used or local1[v] != local2[image]:
            return None
        added = []
        vmap[v] = image
        used.add(image)
        if via is not None:
            hmap[via] = via_image
            hmap[g1.involution[via]] = g2.involution[via_image]
            added.extend([via, g1.involution[via]])
        for h in g1.vertex_half_edges(v):
            if g1.is_leg(h):
                hmap[h] = g2.leg(g1.marking(h))
                added.append(h)
        return added

    def undo(v: int, added: List[int]) -> None:
        used.discard(vmap.pop(v))
        for h in added:
            hmap.pop(h, None)

    def search(i: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if i == len(order):
            yield (
                tuple(vmap[v] for v in range(g1.num_vertices)),
                tuple(hmap[h] for h in range(g1.num_half_edges)),
            )
            return
        v, parent_half_edge = order[i]
        if parent_half_edge is None:
            for image in range(g2.num_vertices):
                added = assign(v, image, None, None)
                if added is not None:
                    yield from search(i + 1)
                    undo(v, added)
            return
        # parent_half_edge sits at the parent; its partner is at v
        parent = g1.half_edges[parent_half_edge]
        for k in g2.vertex_half_edges(vmap[parent]):
            if g2.is_leg(k):
                continue
            if (hc1[parent_half_edge], hc1[g1.involution[parent_half_edge]]) != (hc2[k], hc2[g2.involution[k]]):
                continue
            added = assign(v, g2.neighbor(k), g1.involution[parent_half_edge], g2.involution[k])
            if added is not None:
                yield from search(i + 1)
                undo(v, added)

    yield from search(0)
