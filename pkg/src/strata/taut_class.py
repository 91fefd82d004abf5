"""
TautClass - rational combinations of canonical decorated strata.

Terms are keyed by canonical key, so isomorphic strata merge on
construction. A class lives either on the plain prestable stack with n
markings or on the universal curve over the (n-1)-marked stack, in which
case marking n is the curve point and bubble vertices may appear.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from src.core import AmbientMismatchException, DegreeException, GraphException
from src.graphs.canonical import canonicalize
from src.graphs.prestable import PrestableGraph
from src.strata.decoration import Decoration, DecoratedStratum


@dataclass(frozen=True)
class Ambient:
    """Genus-0 ambient: n markings, optionally the universal curve."""

    n: int
    universal: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "universal": self.universal}


@dataclass(frozen=True)
class CanonicalStratum:
    key: bytes
    stratum: DecoratedStratum
    automorphisms: int


def _bubble_ok(s: DecoratedStratum) -> bool:
    g = s.graph
    for v in s.contracted:
        if g.valence(v) != 3 or g.genus[v] != 0 or not s.decoration.is_trivial_at(g, v):
            return False
        if g.half_edges[g.leg(g.n)] != v:
            return False
    return len(s.contracted) <= 1


@lru_cache(maxsize=500_000)
def canonical_stratum(s: DecoratedStratum) -> CanonicalStratum:
    """Canonical representative of a decorated stratum."""
    form = canonicalize(s.graph, decoration=s)
    kappa = tuple(color[1] for color in form.vertex_colors)
    contracted = frozenset(i for i, color in enumerate(form.vertex_colors) if color[0])
    stratum = DecoratedStratum(form.graph, Decoration(psi=tuple(form.half_edge_colors), kappa=kappa), contracted)
    return CanonicalStratum(key=form.key, stratum=stratum, automorphisms=form.automorphisms)


def stratum_key(s: DecoratedStratum) -> bytes:
    return canonical_stratum(s).key


class TautClass:
    """
    Immutable finite rational combination of decorated strata.

    Attributes:
        ambient: The ambient the class lives on.
        terms: Canonical key -> nonzero rational coefficient.
    """

    __slots__ = ("ambient", "terms", "_strata")

    def __init__(
        self,
        ambient: Ambient,
        terms: Optional[Mapping[bytes, Fraction]] = None,
        strata: Optional[Mapping[bytes, DecoratedStratum]] = None,
    ):
        self.ambient = ambient
        self.terms: Dict[bytes, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}
        self._strata: Dict[bytes, DecoratedStratum] = {k: strata[k] for k in self.terms} if strata else {}

    @classmethod
    def zero(cls, ambient: Ambient) -> "TautClass":
        return cls(ambient)

    @classmethod
    def fundamental(cls, n: int, universal: bool = False) -> "TautClass":
        return make_class([(DecoratedStratum.bare(PrestableGraph.trivial(n)), 1)], Ambient(n, universal))

    def stratum(self, key: bytes) -> DecoratedStratum:
        return self._strata[key]

    def items(self) -> Iterator[Tuple[DecoratedStratum, Fraction]]:
        """(canonical stratum, coefficient) pairs in key order."""
        for key in sorted(self.terms):
            yield self._strata[key], self.terms[key]

    def keyed_items(self) -> Iterator[Tuple[bytes, DecoratedStratum, Fraction]]:
        for key in sorted(self.terms):
            yield key, self._strata[key], self.terms[key]

    def coefficient(self, key: bytes) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_empty(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "TautClass") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatchException(f"cannot combine classes on {self.ambient} and {other.ambient}")

    def __add__(self, other: "TautClass") -> "TautClass":
        self._check(other)
        terms = dict(self.terms)
        strata = dict(self._strata)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
            strata.setdefault(key, other._strata[key])
        return TautClass(self.ambient, terms, strata)

    def __neg__(self) -> "TautClass":
        return TautClass(self.ambient, {k: -c for k, c in self.terms.items()}, self._strata)

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + (-other)

    def __mul__(self, factor: Any) -> "TautClass":
        if isinstance(factor, TautClass):
            raise TypeError("use calculus.product for class products")
        f = Fraction(factor)
        return TautClass(self.ambient, {k: c * f for k, c in self.terms.items()}, self._strata)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TautClass):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self.terms.items())))

    def degrees(self) -> Set[int]:
        return {s.codim for s in self._strata.values()}

    def degree(self) -> Optional[int]:
        """
        Codimension of a pure-degree class (None for the zero class).

        Raises:
            DegreeException: If the class mixes codimensions.
        """
        degrees = self.degrees()
        if not degrees:
            return None
        if len(degrees) > 1:
            raise DegreeException(f"class mixes codimensions {sorted(degrees)}")
        return degrees.pop()

    def homogeneous(self, d: int) -> "TautClass":
        """Degree-d part of a mixed class."""
        keep = {k: c for k, c in self.terms.items() if self._strata[k].codim == d}
        return TautClass(self.ambient, keep, self._strata)

    def filter(self, predicate) -> "TautClass":
        """Keep the terms whose stratum satisfies predicate."""
        keep = {k: c for k, c in self.terms.items() if predicate(self._strata[k])}
        return TautClass(self.ambient, keep, self._strata)

    def with_ambient(self, ambient: Ambient) -> "TautClass":
        if ambient.n != self.ambient.n:
            raise AmbientMismatchException(f"cannot move a class from {self.ambient} to {ambient}")
        if not ambient.universal and any(s.contracted for s in self._strata.values()):
            raise AmbientMismatchException("class has bubble terms; restrict it to the open part first")
        return TautClass(ambient, self.terms, self._strata)

    def to_dict(self) -> Dict[str, Any]:
        terms = []
        for stratum, c in self.items():
            entry = stratum.to_dict()
            entry["coeff"] = f"{c.numerator}/{c.denominator}"
            terms.append(entry)
        data: Dict[str, Any] = {"n": self.ambient.n, "terms": terms}
        if self.ambient.universal:
            data["universal"] = True
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TautClass":
        ambient = Ambient(int(data["n"]), bool(data.get("universal", False)))
        pairs = [(DecoratedStratum.from_dict(t), Fraction(t.get("coeff", "1"))) for t in data.get("terms", [])]
        return make_class(pairs, ambient)

    def __repr__(self) -> str:
        parts = [f"{c}*{s.graph!r}{list(s.decoration.psi)}{list(s.decoration.kappa)}" for s, c in self.items()]
        return f"TautClass(n={self.ambient.n}{', universal' if self.ambient.universal else ''}: {' + '.join(parts) or '0'})"


def make_class(
    pairs: Iterable[Tuple[DecoratedStratum, Any]],
    ambient: Optional[Ambient] = None,
) -> TautClass:
    """
    Canonicalize strata and merge like terms.

    Terms whose bubble vertex carries a decoration are zero and are dropped.

    Args:
        pairs: (stratum, rational coefficient) pairs.
        ambient: Target ambient; inferred from the first stratum if omitted.

    Returns:
        The merged class.

    Raises:
        AmbientMismatchException: If strata disagree on the number of markings
            or bubble terms appear outside a universal ambient.
    """
    terms: Dict[bytes, Fraction] = {}
    strata: Dict[bytes, DecoratedStratum] = {}
    for stratum, coeff in pairs:
        c = Fraction(coeff)
        if ambient is None:
            ambient = Ambient(stratum.graph.n, bool(stratum.contracted))
        if stratum.graph.n != ambient.n:
            raise AmbientMismatchException(
                f"stratum with {stratum.graph.n} markings in an ambient with {ambient.n}"
            )
        if not c:
            continue
        if stratum.contracted:
            if not ambient.universal:
                raise AmbientMismatchException("bubble vertices only exist on the universal curve")
            if not _bubble_ok(stratum):
                if any(not stratum.decoration.is_trivial_at(stratum.graph, v) for v in stratum.contracted):
                    continue
                raise GraphException("malformed bubble vertex", invariant="bubble")
        canon = canonical_stratum(stratum)
        terms[canon.key] = terms.get(canon.key, Fraction(0)) + c
        strata.setdefault(canon.key, canon.stratum)
    return TautClass(ambient if ambient is not None else Ambient(0), terms, strata)


def class_sum(classes: Iterable[TautClass], ambient: Ambient) -> TautClass:
    """Sum of classes on a common ambient (zero for an empty iterable)."""
    terms: Dict[bytes, Fraction] = {}
    strata: Dict[bytes, DecoratedStratum] = {}
    for c in classes:
        if c.ambient != ambient:
            raise AmbientMismatchException(f"cannot add a class on {c.ambient} to {ambient}")
        for key, value in c.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + value
            strata.setdefault(key, c._strata[key])
    return TautClass(ambient, terms, strata)


def decorated(
    graph: PrestableGraph,
    psi: Optional[Mapping[int, int]] = None,
    kappa: Optional[Mapping[int, Mapping[int, int]]] = None,
    contracted: Iterable[int] = (),
) -> DecoratedStratum:
    """Shorthand for a DecoratedStratum built from sparse maps."""
    return DecoratedStratum(graph, Decoration.from_maps(graph, psi, kappa), frozenset(contracted))


def psi_class(n: int, i: int, power: int = 1, universal: bool = False) -> TautClass:
    """psi_i^power on the trivial graph."""
    g = PrestableGraph.trivial(n)
    return make_class([(decorated(g, psi={g.leg(i): power}), 1)], Ambient(n, universal))


def kappa_class(n: int, a: int, power: int = 1, universal: bool = False) -> TautClass:
    """kappa_a^power on the trivial graph."""
    g = PrestableGraph.trivial(n)
    return make_class([(decorated(g, kappa={0: {a: power}}), 1)], Ambient(n, universal))


def boundary_class(n: int, side1: Iterable[int], side2: Iterable[int]) -> TautClass:
    """Undecorated one-edge class D(side1 | side2)."""
    g = PrestableGraph.build([sorted(side1), sorted(side2)], [(0, 1)])
    if g.n != n:
        raise AmbientMismatchException(f"D({sorted(side1)}|{sorted(side2)}) does not have {n} markings")
    return make_class([(DecoratedStratum.bare(g), 1)], Ambient(n))


def graph_class(g: PrestableGraph, coeff: Any = 1) -> TautClass:
    return make_class([(DecoratedStratum.bare(g), coeff)], Ambient(g.n))
