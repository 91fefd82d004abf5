"""
Prestable graphs - dual graphs of nodal marked curves.

A graph is stored as flat tuples: the genus of each vertex, the vertex of
each half-edge, an involution on half-edges (fixed points are legs,
2-cycles are edges) and the half-edge carrying each marking 1..n.
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.core import GraphException


@dataclass(frozen=True)
class PrestableGraph:
    """Immutable prestable graph with 1-based marking labels."""

    genus: Tuple[int, ...]
    half_edges: Tuple[int, ...]
    involution: Tuple[int, ...]
    legs: Tuple[int, ...]

    @classmethod
    def build(
        cls,
        vertex_markings: Sequence[Sequence[int]],
        edges: Sequence[Tuple[int, int]] = (),
        genus: Optional[Sequence[int]] = None,
    ) -> "PrestableGraph":
        """
        Build a graph from per-vertex marking lists and vertex pairs.

        Legs get half-edges 0..n-1 in marking order, then each edge (v, w)
        contributes two consecutive half-edges, the first at v.

        Args:
            vertex_markings: Marking labels carried by each vertex.
            edges: Pairs of vertex indices joined by an edge.
            genus: Optional vertex genera (default all zero).

        Returns:
            The assembled graph.
        """
        markings = sorted(m for ms in vertex_markings for m in ms)
        n = len(markings)
        if markings != list(range(1, n + 1)):
            raise GraphException("markings must be exactly 1..n", invariant="legs")
        owner = {m: v for v, ms in enumerate(vertex_markings) for m in ms}
        half_edges = [owner[m] for m in range(1, n + 1)]
        involution = list(range(n))
        for v, w in edges:
            h = len(half_edges)
            half_edges.extend([v, w])
            involution.extend([h + 1, h])
        return cls(
            genus=tuple(genus) if genus is not None else (0,) * len(vertex_markings),
            half_edges=tuple(half_edges),
            involution=tuple(involution),
            legs=tuple(range(n)),
        )

    @classmethod
    def trivial(cls, n: int) -> "PrestableGraph":
        """Single genus-0 vertex carrying all n markings."""
        return cls.build([list(range(1, n + 1))])

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def num_vertices(self) -> int:
        return len(self.genus)

    @property
    def num_half_edges(self) -> int:
        return len(self.half_edges)

    @cached_property
    def _incidence(self) -> Tuple[Tuple[int, ...], ...]:
        at: List[List[int]] = [[] for _ in self.genus]
        for h, v in enumerate(self.half_edges):
            at[v].append(h)
        return tuple(tuple(hs) for hs in at)

    @cached_property
    def _marking_of(self) -> Dict[int, int]:
        return {h: i + 1 for i, h in enumerate(self.legs)}

    def vertex_half_edges(self, v: int) -> Tuple[int, ...]:
        """Half-edges incident to vertex v, in increasing order."""
        return self._incidence[v]

    def valence(self, v: int) -> int:
        """Number n(v) of half-edges at v."""
        return len(self._incidence[v])

    def is_leg(self, h: int) -> bool:
        return self.involution[h] == h

    def marking(self, h: int) -> Optional[int]:
        """Marking label carried by half-edge h, or None for edge half-edges."""
        return self._marking_of.get(h)

    def leg(self, i: int) -> int:
        """Half-edge carrying marking i."""
        return self.legs[i - 1]

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as half-edge pairs (h, h') with h < h'."""
        return tuple((h, k) for h, k in enumerate(self.involution) if h < k)

    @property
    def num_edges(self) -> int:
        return sum(1 for h, k in enumerate(self.involution) if h < k)

    def neighbor(self, h: int) -> int:
        """Vertex at the other end of the edge through half-edge h."""
        return self.half_edges[self.involution[h]]

    def is_stable_vertex(self, v: int) -> bool:
        return 2 * self.genus[v] - 2 + self.valence(v) > 0

    def is_stable(self) -> bool:
        return all(self.is_stable_vertex(v) for v in range(self.num_vertices))

    def markings_at(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(self._marking_of[h] for h in self._incidence[v] if h in self._marking_of))

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dictionary in the documented field order."""
        return {
            "genus": list(self.genus),
            "halfedges": list(self.half_edges),
            "involution": list(self.involution),
            "legs": {str(i + 1): h for i, h in enumerate(self.legs)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PrestableGraph":
        legs = data.get("legs", {})
        n = len(legs)
        try:
            leg_tuple = tuple(int(legs[str(i)]) for i in range(1, n + 1))
        except KeyError as e:
            raise GraphException(f"marking {e} missing from legs", invariant="legs")
        return cls(
            genus=tuple(int(g) for g in data["genus"]),
            half_edges=tuple(int(v) for v in data["halfedges"]),
            involution=tuple(int(h) for h in data["involution"]),
            legs=leg_tuple,
        )

    @classmethod
    def from_json(cls, text: str) -> "PrestableGraph":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        parts = []
        for v in range(self.num_vertices):
            marks = ",".join(str(m) for m in self.markings_at(v))
            parts.append(f"v{v}[{marks}]")
        edges = " ".join(f"{self.half_edges[h]}-{self.half_edges[k]}" for h, k in self.edges())
        return f"PrestableGraph({' '.join(parts)} | {edges})"


@dataclass
class GraphReport:
    """Outcome of validate(): ok plus the violated invariants."""

    ok: bool = True
    violations: List[str] = field(default_factory=list)

    def fail(self, invariant: str, detail: str) -> None:
        self.ok = False
        self.violations.append(f"{invariant}: {detail}")

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": list(self.violations)}


def to_networkx(g: PrestableGraph) -> nx.MultiGraph:
    """Underlying vertex/edge multigraph (legs omitted)."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(g.num_vertices))
    for h, k in g.edges():
        graph.add_edge(g.half_edges[h], g.half_edges[k])
    return graph


def validate(g: PrestableGraph, genus_zero: bool = True, genus: Optional[int] = None) -> GraphReport:
    """
    Check the prestable-graph invariants.

    Args:
        g: Graph to check.
        genus_zero: Also require all genera 0 and a tree (genus-0 mode).
        genus: Expected total genus for the genus condition (default: no check
            outside genus-0 mode).

    Returns:
        A report naming each violated invariant.
    """
    report = GraphReport()
    H = g.num_half_edges
    if len(g.involution) != H:
        report.fail("involution", "length differs from the half-edge list")
        return report
    if any(not 0 <= v < g.num_vertices for v in g.half_edges):
        report.fail("half_edges", "half-edge attached to a missing vertex")
        return report
    for h, k in enumerate(g.involution):
        if not 0 <= k < H or g.involution[k] != h:
            report.fail("involution", f"half-edge {h} is not part of an involution")
            return report
    fixed = {h for h, k in enumerate(g.involution) if h == k}
    if len(set(g.legs)) != len(g.legs) or set(g.legs) != fixed:
        report.fail("legs", "markings must label each fixed point exactly once")

    multigraph = to_networkx(g)
    if g.num_vertices == 0 or not nx.is_connected(multigraph):
        report.fail("connectivity", "graph is not connected")
        return report

    h1 = multigraph.number_of_edges() - g.num_vertices + 1
    if genus is not None and sum(g.genus) + h1 != genus:
        report.fail("genus", f"sum of genera plus h1 is {sum(g.genus) + h1}, expected {genus}")
    if any(x < 0 for x in g.genus):
        report.fail("genus", "negative vertex genus")
    if genus_zero:
        if any(x != 0 for x in g.genus):
            report.fail("genus", "genus-0 mode requires all vertex genera to be 0")
        if h1 != 0:
            report.fail("tree", f"genus-0 mode requires a tree (h1={h1})")
    return report


def require_valid(g: PrestableGraph, genus_zero: bool = True) -> None:
    """Raise GraphException with the first violation, if any."""
    report = validate(g, genus_zero=genus_zero)
    if not report.ok:
        invariant = report.violations[0].split(":", 1)[0]
        raise GraphException(f"invalid graph {g!r}: {'; '.join(report.violations)}", invariant=invariant)
