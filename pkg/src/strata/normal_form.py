"""
Normal form - decoration shapes that give an additive basis per stratum.

Per vertex: no half-edges -> a power of kappa_2; one half-edge -> a power of
its psi; two half-edges h < h' -> psi_h^c + (-psi_h')^c; three or more ->
trivial. Basis classes are these decorations expanded into monomials and
merged, one class per automorphism orbit, scaled so the coefficient of the
smallest key is 1.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.core import NormalizationException
from src.core.logging import progress
from src.graphs.enumeration import enumerate_graphs
from src.graphs.prestable import PrestableGraph
from src.strata.decoration import Decoration, DecoratedStratum, DecorationPolynomial
from src.strata.substacks import AllGraphs, SubstackSpec, check_contraction_closed
from src.strata.taut_class import Ambient, TautClass, make_class

logger = logging.getLogger(__name__)


def is_normal_form(s: DecoratedStratum) -> bool:
    """
    Check the per-vertex normal-form rules.

    A 2-valent vertex is accepted when at most one of its two psi exponents
    is nonzero, i.e. the monomial is a term of a normal-form binomial.
    """
    g, d = s.graph, s.decoration
    for v in range(g.num_vertices):
        k = g.valence(v)
        hs = g.vertex_half_edges(v)
        if k == 0:
            kappa = d.kappa[v]
            if kappa and (kappa[0] != 0 or len(kappa) != 2):
                return False
        elif d.kappa[v]:
            return False
        elif k == 2:
            if d.psi[hs[0]] and d.psi[hs[1]]:
                return False
        elif k >= 3 and any(d.psi[h] for h in hs):
            return False
    return True


def vertex_normal_forms(g: PrestableGraph, v: int, degree: int) -> List[Tuple[Decoration, Fraction]]:
    """Expanded normal-form decoration of the given degree at one vertex."""
    k = g.valence(v)
    trivial = Decoration.trivial(g)
    if degree == 0:
        return [(trivial, Fraction(1))]
    hs = g.vertex_half_edges(v)
    if k == 0:
        if degree % 2:
            return []
        kappa = list(trivial.kappa)
        kappa[v] = (0, degree // 2)
        return [(Decoration(trivial.psi, tuple(kappa)), Fraction(1))]
    if k == 1:
        psi = list(trivial.psi)
        psi[hs[0]] = degree
        return [(Decoration(tuple(psi), trivial.kappa), Fraction(1))]
    if k == 2:
        terms = []
        for h, sign in ((hs[0], 1), (hs[1], (-1) ** degree)):
            psi = list(trivial.psi)
            psi[h] = degree
            terms.append((Decoration(tuple(psi), trivial.kappa), Fraction(sign)))
        return terms
    return []


def _distributions(total: int, slots: Sequence[int]) -> Iterator[Dict[int, int]]:
    if not slots:
        if total == 0:
            yield {}
        return
    first, rest = slots[0], slots[1:]
    for e in range(total + 1):
        for tail in _distributions(total - e, rest):
            yield {first: e, **tail}


def normal_form_decorations(
    g: PrestableGraph,
    degree: int,
    trivial_at: Sequence[int] = (),
) -> Iterator[DecorationPolynomial]:
    """
    All expanded normal-form decorations of a given degree on g.

    Args:
        g: Carrying graph.
        degree: Total decoration degree.
        trivial_at: Vertices forced to carry the trivial decoration.

    Yields:
        One polynomial per choice of per-vertex degrees.
    """
    slots = [v for v in range(g.num_vertices) if g.valence(v) <= 2 and v not in trivial_at]
    for split in _distributions(degree, slots):
        poly = DecorationPolynomial.monomial(Decoration.trivial(g))
        for v, e in split.items():
            local = vertex_normal_forms(g, v, e)
            if not local:
                poly = DecorationPolynomial()
                break
            poly = poly * DecorationPolynomial({dec: c for dec, c in local})
        if poly:
            yield poly


def polynomial_class(g: PrestableGraph, poly: DecorationPolynomial, coeff: Fraction = Fraction(1)) -> TautClass:
    return make_class(((DecoratedStratum(g, dec), c * coeff) for dec, c in poly.items()), Ambient(g.n))


@dataclass
class NormalFormBasis:
    """
    Ordered normal-form basis of one codimension.

    Attributes:
        n: Number of markings.
        degree: Codimension.
        spec: The substack spec the basis was built for.
        classes: Basis classes, each scaled so its leading coefficient is 1.
        lookup: Canonical key -> (basis index, coefficient in that class).
    """

    n: int
    degree: int
    spec: SubstackSpec
    classes: List[TautClass] = field(default_factory=list)
    lookup: Dict[bytes, Tuple[int, Fraction]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.classes)

    def leading_keys(self) -> List[bytes]:
        return [min(c.terms) for c in self.classes]

    def append(self, c: TautClass) -> bool:
        """Add a class unless its orbit is already present; returns True when added."""
        lead = min(c.terms)
        if lead in self.lookup:
            return False
        scaled = c * (1 / c.terms[lead])
        index = len(self.classes)
        self.classes.append(scaled)
        for key, value in scaled.terms.items():
            self.lookup[key] = (index, value)
        return True

    def coordinates(self, c: TautClass) -> Dict[int, Fraction]:
        """
        Coordinates of a normal-form class in this basis.

        Terms on graphs outside the spec are dropped.

        Raises:
            NormalizationException: If an allowed term is not a basis monomial or
                the coefficients of one basis class are inconsistent.
        """
        coords: Dict[int, Fraction] = {}
        seen: Dict[int, int] = {}
        for key, stratum, value in c.keyed_items():
            if not self.spec.allows(stratum.graph):
                continue
            hit = self.lookup.get(key)
            if hit is None:
                raise NormalizationException(f"term {stratum.graph!r} {stratum.decoration} is not in the basis")
            index, base = hit
            ratio = value / base
            if index in coords and coords[index] != ratio:
                raise NormalizationException(f"class is not a combination of basis class {index}")
            coords[index] = ratio
            seen[index] = seen.get(index, 0) + 1
        for index, count in seen.items():
            expected = sum(
                1 for k in self.classes[index].terms if self.spec.allows(self.classes[index].stratum(k).graph)
            )
            if count != expected:
                raise NormalizationException(f"class covers only part of basis class {index}")
        return {i: x for i, x in coords.items() if x}


def enumerate_normal_form_basis(n: int, d: int, spec: Optional[SubstackSpec] = None) -> NormalFormBasis:
    """
    Normal-form basis of codimension d on the open substack spec.

    Args:
        n: Number of markings.
        d: Codimension.
        spec: Contraction-closed substack (default: all graphs).

    Returns:
        The basis; zero orbit sums are excluded.

    Raises:
        SubstackException: If spec is not contraction-closed up to d edges.
    """
    spec = spec or AllGraphs()
    return _enumerate_basis(n, d, spec)


@lru_cache(maxsize=256)
def _enumerate_basis(n: int, d: int, spec: SubstackSpec) -> NormalFormBasis:
    if not isinstance(spec, AllGraphs):
        check_contraction_closed(spec, n, d)
    basis = NormalFormBasis(n=n, degree=d, spec=spec)
    graphs = [g for p in range(d + 1) for g in enumerate_graphs(n, p) if spec.allows(g)]
    for g in progress(graphs, desc=f"basis n={n} d={d}"):
        for poly in normal_form_decorations(g, d - g.num_edges):
            c = polynomial_class(g, poly)
            if c:
                basis.append(c)
    logger.debug("normal-form basis n=%d d=%d spec=%s: %d classes", n, d, spec.name, len(basis))
    return basis
