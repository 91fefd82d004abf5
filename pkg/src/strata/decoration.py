"""
Decorations - psi/kappa monomials attached to the vertices of a graph.

A Decoration stores one psi exponent per half-edge and, per vertex, the
exponents of kappa_1, kappa_2, ... (trailing zeros trimmed). A
DecoratedStratum pairs it with a graph and the set of contracted bubble
vertices used on the universal curve.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from src.core import GraphException
from src.graphs.prestable import PrestableGraph

KappaVector = Tuple[int, ...]


def trim(kappa: Iterable[int]) -> KappaVector:
    values = list(kappa)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def kappa_vector(exponents: Mapping[int, int]) -> KappaVector:
    """Convert {a: exponent} into the stored tuple form."""
    if not exponents:
        return ()
    if min(exponents) < 1:
        raise GraphException(f"kappa indices start at 1, got {sorted(exponents)}", invariant="decoration")
    values = [0] * max(exponents)
    for a, e in exponents.items():
        values[a - 1] += e
    return trim(values)


def kappa_degree(kappa: KappaVector) -> int:
    return sum((a + 1) * e for a, e in enumerate(kappa))


def add_kappa(x: KappaVector, y: KappaVector) -> KappaVector:
    size = max(len(x), len(y))
    return trim((x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0) for i in range(size))


@dataclass(frozen=True)
class Decoration:
    """Monomial decoration: psi exponent per half-edge, kappa vector per vertex."""

    psi: Tuple[int, ...]
    kappa: Tuple[KappaVector, ...]

    @classmethod
    def trivial(cls, g: PrestableGraph) -> "Decoration":
        return cls(psi=(0,) * g.num_half_edges, kappa=((),) * g.num_vertices)

    @classmethod
    def from_maps(
        cls,
        g: PrestableGraph,
        psi: Optional[Mapping[int, int]] = None,
        kappa: Optional[Mapping[int, Mapping[int, int]]] = None,
    ) -> "Decoration":
        """
        Build a decoration from sparse maps.

        Args:
            g: Carrying graph.
            psi: Half-edge -> exponent.
            kappa: Vertex -> {a: exponent of kappa_a}.
        """
        psi_values = [0] * g.num_half_edges
        for h, e in (psi or {}).items():
            if not 0 <= h < g.num_half_edges:
                raise GraphException(f"psi on missing half-edge {h}", invariant="decoration")
            psi_values[h] += e
        kappa_values: List[KappaVector] = [()] * g.num_vertices
        for v, exps in (kappa or {}).items():
            if not 0 <= v < g.num_vertices:
                raise GraphException(f"kappa on missing vertex {v}", invariant="decoration")
            kappa_values[v] = add_kappa(kappa_values[v], kappa_vector(exps))
        return cls(psi=tuple(psi_values), kappa=tuple(kappa_values))

    @property
    def degree(self) -> int:
        return sum(self.psi) + sum(kappa_degree(k) for k in self.kappa)

    def vertex_degree(self, g: PrestableGraph, v: int) -> int:
        return sum(self.psi[h] for h in g.vertex_half_edges(v)) + kappa_degree(self.kappa[v])

    def is_trivial_at(self, g: PrestableGraph, v: int) -> bool:
        return not self.kappa[v] and all(self.psi[h] == 0 for h in g.vertex_half_edges(v))

    def kappa_at(self, v: int) -> Dict[int, int]:
        return {a + 1: e for a, e in enumerate(self.kappa[v]) if e}

    def __mul__(self, other: "Decoration") -> "Decoration":
        if len(self.psi) != len(other.psi) or len(self.kappa) != len(other.kappa):
            raise GraphException("decorations live on different graphs", invariant="decoration")
        return Decoration(
            psi=tuple(a + b for a, b in zip(self.psi, other.psi)),
            kappa=tuple(add_kappa(a, b) for a, b in zip(self.kappa, other.kappa)),
        )

    def without_vertex(self, g: PrestableGraph, v: int) -> "Decoration":
        """Copy with the psi/kappa data at vertex v removed."""
        psi = list(self.psi)
        for h in g.vertex_half_edges(v):
            psi[h] = 0
        kappa = list(self.kappa)
        kappa[v] = ()
        return Decoration(psi=tuple(psi), kappa=tuple(kappa))

    def colors(self, g: PrestableGraph) -> Tuple[Tuple[Any, ...], Tuple[Any, ...]]:
        """Vertex and half-edge colors used by canonical labeling."""
        return self.kappa, self.psi


@dataclass(frozen=True)
class DecoratedStratum:
    """
    One additive generator [graph, decoration].

    Attributes:
        graph: Genus-0 prestable graph.
        decoration: Monomial decoration on graph.
        contracted: Bubble vertices (universal-curve classes only).
    """

    graph: PrestableGraph
    decoration: Decoration
    contracted: FrozenSet[int] = field(default_factory=frozenset)

    @classmethod
    def bare(cls, graph: PrestableGraph, contracted: Iterable[int] = ()) -> "DecoratedStratum":
        return cls(graph, Decoration.trivial(graph), frozenset(contracted))

    @property
    def codim(self) -> int:
        return self.graph.num_edges + self.decoration.degree

    def colors(self, g: PrestableGraph) -> Tuple[Tuple[Any, ...], Tuple[Any, ...]]:
        vertex_colors = tuple((1 if v in self.contracted else 0, k) for v, k in enumerate(self.decoration.kappa))
        return vertex_colors, self.decoration.psi

    def to_dict(self) -> Dict[str, Any]:
        kappa = {
            str(v): {str(a): e for a, e in self.decoration.kappa_at(v).items()}
            for v in range(self.graph.num_vertices)
            if self.decoration.kappa[v]
        }
        data = {
            "graph": self.graph.to_dict(),
            "psi": {str(h): e for h, e in enumerate(self.decoration.psi) if e},
            "kappa": kappa,
        }
        if self.contracted:
            data["contracted"] = sorted(self.contracted)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DecoratedStratum":
        graph = PrestableGraph.from_dict(data["graph"])
        decoration = Decoration.from_maps(
            graph,
            psi={int(h): int(e) for h, e in data.get("psi", {}).items()},
            kappa={int(v): {int(a): int(e) for a, e in ks.items()} for v, ks in data.get("kappa", {}).items()},
        )
        return cls(graph, decoration, frozenset(int(v) for v in data.get("contracted", [])))


class DecorationPolynomial:
    """
    Rational combination of decorations on one fixed graph.

    Used as scratch space by the calculus when a vertex rule expands into a
    sum of monomials before the strata are canonicalized.
    """

    def __init__(self, terms: Optional[Mapping[Decoration, Fraction]] = None):
        self.terms: Dict[Decoration, Fraction] = {}
        for d, c in (terms or {}).items():
            self.add(d, c)

    @classmethod
    def monomial(cls, decoration: Decoration, coeff: Any = 1) -> "DecorationPolynomial":
        return cls({decoration: Fraction(coeff)})

    def add(self, decoration: Decoration, coeff: Any) -> None:
        value = self.terms.get(decoration, Fraction(0)) + Fraction(coeff)
        if value:
            self.terms[decoration] = value
        else:
            self.terms.pop(decoration, None)

    def __add__(self, other: "DecorationPolynomial") -> "DecorationPolynomial":
        result = DecorationPolynomial(self.terms)
        for d, c in other.terms.items():
            result.add(d, c)
        return result

    def scale(self, factor: Any) -> "DecorationPolynomial":
        f = Fraction(factor)
        if not f:
            return DecorationPolynomial()
        return DecorationPolynomial({d: c * f for d, c in self.terms.items()})

    def __mul__(self, other: "DecorationPolynomial") -> "DecorationPolynomial":
        result = DecorationPolynomial()
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                result.add(d1 * d2, c1 * c2)
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        return self.terms.items()
