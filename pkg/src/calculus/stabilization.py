"""
Stabilization pullback from the prestable stack to the stable moduli space.

st^* psi_i = psi_i - [i on a 2-valent rational tail]. For kappa classes the
mixed-degree identity

    st^* Phi(kappa) = Phi(kappa) + sum_k [G_k, (Phi(kappa_{v0}) + psi_{h0}^{-1}) Cont_k]

is used, with Phi(t) = (exp(t) - 1)/t, G_k the chain v0 - v1 - ... - v_k
carrying all markings on v_k, Cont_k = prod over its edges of
-Phi(psi_h + psi_h') and psi_{h0}^{-1} lowering the psi exponent at the
half-edge of v0 (terms without it dropped). kappa_0 is the scalar
2g - 2 + n(v).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Tuple

from src.calculus.gluing import gluing_pushforward
from src.calculus.product import power, product_all
from src.core import GraphException, ValidationException
from src.graphs.prestable import PrestableGraph
from src.strata.decoration import Decoration, DecoratedStratum, DecorationPolynomial, KappaVector, kappa_vector
from src.strata.taut_class import Ambient, TautClass, class_sum, graph_class, kappa_class, make_class, psi_class

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StabilizationSeries:
    """Coefficients 1/(k+1)! of Phi(t) up to t^degree_cap."""

    degree_cap: int

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(1, factorial(k + 1)) for k in range(self.degree_cap + 1))

    def phi(self, k: int) -> Fraction:
        return Fraction(1, factorial(k + 1)) if 0 <= k <= self.degree_cap else Fraction(0)


def chain_graph(n: int, k: int) -> PrestableGraph:
    """G_k: vertices v0..v_k in a chain, all n markings on v_k."""
    markings = [[] for _ in range(k)] + [list(range(1, n + 1))]
    return PrestableGraph.build(markings, [(i, i + 1) for i in range(k)])


def _truncate(poly: DecorationPolynomial, cap: int) -> DecorationPolynomial:
    return DecorationPolynomial({d: c for d, c in poly.items() if d.degree <= cap})


def _monomial(g: PrestableGraph, psi: Dict[int, int] = None, kappa: Dict[int, KappaVector] = None) -> Decoration:
    psi_values = [0] * g.num_half_edges
    for h, e in (psi or {}).items():
        psi_values[h] = e
    kappa_values: List[KappaVector] = [()] * g.num_vertices
    for v, k in (kappa or {}).items():
        kappa_values[v] = k
    return Decoration(tuple(psi_values), tuple(kappa_values))


def _edge_factor(g: PrestableGraph, h: int, k: int, series: StabilizationSeries, cap: int) -> DecorationPolynomial:
    """-Phi(psi_h + psi_k) truncated at degree cap."""
    poly = DecorationPolynomial()
    for j in range(cap + 1):
        for r in range(j + 1):
            poly.add(_monomial(g, {h: r, k: j - r}), -series.phi(j) * comb(j, r))
    return poly


def _chain_bracket(g: PrestableGraph, series: StabilizationSeries, cap: int) -> DecorationPolynomial:
    """(Phi(kappa_{v0}) + psi_{h0}^{-1}) Cont_k truncated at degree cap."""
    unit = DecorationPolynomial.monomial(Decoration.trivial(g))
    cont = unit
    for h, h_next in g.edges():
        cont = _truncate(cont * _edge_factor(g, h, h_next, series, cap + 1), cap + 1)
    h0 = g.vertex_half_edges(0)[0]

    phi_kappa = DecorationPolynomial.monomial(Decoration.trivial(g), -series.phi(0))
    for a in range(1, cap + 1):
        phi_kappa.add(_monomial(g, kappa={0: kappa_vector({a: 1})}), series.phi(a))
    bracket = _truncate(phi_kappa * _truncate(cont, cap), cap)

    for d, c in cont.items():
        if d.psi[h0] >= 1 and d.degree - 1 <= cap:
            psi = list(d.psi)
            psi[h0] -= 1
            bracket.add(Decoration(tuple(psi), d.kappa), c)
    return bracket


def stabilization_kappa_series(n: int, degree_cap: int) -> TautClass:
    """
    Mixed-degree class st^*[Phi(t)] with t^a -> kappa_a, up to degree_cap.

    Raises:
        ValidationException: If n < 3 or degree_cap < 0.
    """
    if n < 3:
        raise ValidationException(f"stabilization needs n >= 3, got {n}", field="n")
    if degree_cap < 0:
        raise ValidationException(f"degree cap must be >= 0, got {degree_cap}", field="degree_cap")
    series = StabilizationSeries(degree_cap)
    ambient = Ambient(n)
    parts = [TautClass.fundamental(n) * (series.phi(0) * (n - 2))]
    for a in range(1, degree_cap + 1):
        parts.append(kappa_class(n, a) * series.phi(a))
    for k in range(1, degree_cap + 1):
        g = chain_graph(n, k)
        bracket = _chain_bracket(g, series, degree_cap - k)
        parts.append(make_class(((DecoratedStratum(g, d), c) for d, c in bracket.items()), ambient))
    return class_sum(parts, ambient)


@lru_cache(maxsize=None)
def stabilization_pullback_kappa(n: int, a: int) -> TautClass:
    """st^* kappa_a = (a+1)! times the degree-a part of the series."""
    return stabilization_kappa_series(n, a).homogeneous(a) * factorial(a + 1)


@lru_cache(maxsize=None)
def stabilization_pullback_psi(n: int, i: int) -> TautClass:
    """st^* psi_i = psi_i - [i alone on a 2-valent vertex]."""
    others = [j for j in range(1, n + 1) if j != i]
    tail = PrestableGraph.build([[i], others], [(0, 1)])
    return psi_class(n, i) - graph_class(tail)


@lru_cache(maxsize=20_000)
def _vertex_pullback(n: int, psi: Tuple[int, ...], kappa: KappaVector) -> TautClass:
    factors = [power(stabilization_pullback_psi(n, i + 1), e) for i, e in enumerate(psi) if e]
    factors += [power(stabilization_pullback_kappa(n, a + 1), e) for a, e in enumerate(kappa) if e]
    return product_all(factors, n)


def stabilization_pullback(c: TautClass) -> TautClass:
    """
    Pull a class on the stable moduli space back to the prestable stack.

    Raises:
        GraphException: If a term lives on an unstable graph.
    """
    if c.ambient.universal or c.ambient.n < 3:
        raise GraphException("stabilization needs a class on the plain stack with n >= 3", invariant="stability")
    parts = []
    for stratum, x in c.items():
        g, d = stratum.graph, stratum.decoration
        if not g.is_stable():
            raise GraphException(f"graph {g!r} is not stable", invariant="stability")
        local = {
            v: _vertex_pullback(g.valence(v), tuple(d.psi[h] for h in g.vertex_half_edges(v)), d.kappa[v])
            for v in range(g.num_vertices)
        }
        parts.append(gluing_pushforward(g, local) * x)
    result = class_sum(parts, c.ambient)
    logger.debug("stabilization pullback n=%d: %d -> %d terms", c.ambient.n, len(c), len(result))
    return result
