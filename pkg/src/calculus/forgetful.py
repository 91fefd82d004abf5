"""
Forgetful maps - pullback along and pushforward from the universal curve.

The pullback of [G, alpha] is the sum over vertices v of G of the graph with
the new marking at v, carrying pi_v^* alpha_v. At v, psi_h pulls back to
psi_h minus the section divisor through h, and kappa_a to
kappa_a - psi_*^a. Section divisors are bubble strata on the universal curve;
restrict_to_open drops them. The pushforward contracts bubbles and applies
the monomial rule at the vertex carrying the forgotten point.
"""

import logging
from fractions import Fraction
from itertools import product as cartesian
from math import comb
from typing import Dict, Iterator, List, Tuple

from src.core import AmbientMismatchException, GraphException
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import add_leg, remove_half_edges
from src.strata.decoration import Decoration, DecoratedStratum, KappaVector, add_kappa, trim
from src.strata.taut_class import Ambient, TautClass, make_class

logger = logging.getLogger(__name__)


def _kappa_expansions(kappa: KappaVector) -> Iterator[Tuple[KappaVector, int, Fraction]]:
    """
    Terms of prod_a (x_a + y^a)^{m_a}.

    Yields:
        (kappa vector left on x, exponent s of y, binomial coefficient).
    """
    ranges = [range(m + 1) for m in kappa]
    for js in cartesian(*ranges):
        coeff = 1
        for m, j in zip(kappa, js):
            coeff *= comb(m, j)
        rest = trim(m - j for m, j in zip(kappa, js))
        s = sum((a + 1) * j for a, j in enumerate(js))
        yield rest, s, Fraction(coeff)


def _bubble_at(g: PrestableGraph, h: int) -> Tuple[PrestableGraph, int, int]:
    """
    Move h onto a new bubble carrying the new last marking.

    Returns:
        (graph, bubble vertex, half-edge of the new edge at the old vertex).
    """
    v = g.half_edges[h]
    b, H = g.num_vertices, g.num_half_edges
    half_edges = list(g.half_edges)
    half_edges[h] = b
    graph = PrestableGraph(
        genus=g.genus + (0,),
        half_edges=tuple(half_edges) + (b, b, v),
        involution=g.involution + (H, H + 2, H + 1),
        legs=g.legs + (H,),
    )
    return graph, b, H + 2


def section_class(n: int, i: int) -> TautClass:
    """
    Section divisor D_{i,n+1}: marking i and the curve point on a bubble.

    Returns:
        A class on the universal curve over the n-marked stack.
    """
    if not 1 <= i <= n:
        raise GraphException(f"marking {i} is not in 1..{n}", invariant="legs")
    others = [j for j in range(1, n + 1) if j != i]
    g = PrestableGraph.build([others, [i, n + 1]], [(0, 1)])
    stratum = DecoratedStratum.bare(g, contracted=[1])
    return make_class([(stratum, 1)], Ambient(n + 1, universal=True))


def _pullback_terms(s: DecoratedStratum) -> Iterator[Tuple[DecoratedStratum, Fraction]]:
    g, d = s.graph, s.decoration
    for v in range(g.num_vertices):
        lifted, star = add_leg(g, v)
        psi = list(d.psi) + [0]
        for rest, power, coeff in _kappa_expansions(d.kappa[v]):
            new_psi = list(psi)
            new_psi[star] = power
            kappa = list(d.kappa)
            kappa[v] = rest
            sign = -1 if sum(d.kappa[v]) - sum(rest) & 1 else 1
            yield DecoratedStratum(lifted, Decoration(tuple(new_psi), tuple(kappa))), coeff * sign

        for h in g.vertex_half_edges(v):
            e = d.psi[h]
            if not e:
                continue
            bubbled, bubble, t_prime = _bubble_at(g, h)
            new_psi = list(d.psi) + [0, 0, 0]
            new_psi[h] = 0
            new_psi[t_prime] = e - 1
            kappa = tuple(d.kappa) + ((),)
            yield DecoratedStratum(bubbled, Decoration(tuple(new_psi), kappa), frozenset({bubble})), Fraction(-1)


def forgetful_pullback(c: TautClass) -> TautClass:
    """
    Pull a class on the n-marked stack back to the universal curve.

    Raises:
        AmbientMismatchException: If c already lives on a universal curve.
    """
    if c.ambient.universal:
        raise AmbientMismatchException("forgetful_pullback needs a class on the plain stack")
    pairs: List[Tuple[DecoratedStratum, Fraction]] = []
    for stratum, x in c.items():
        pairs.extend((s, coeff * x) for s, coeff in _pullback_terms(stratum))
    return make_class(pairs, Ambient(c.ambient.n + 1, universal=True))


def restrict_to_open(c: TautClass) -> TautClass:
    """Restrict a universal-curve class to the plain (n+1)-marked stack."""
    if not c.ambient.universal:
        return c
    return c.filter(lambda s: not s.contracted).with_ambient(Ambient(c.ambient.n))


def smooth_forgetful_pullback(c: TautClass) -> TautClass:
    """Flat pullback along the smooth forgetful map of prestable stacks."""
    return restrict_to_open(forgetful_pullback(c))


def _contract_bubble(s: DecoratedStratum) -> DecoratedStratum:
    g, d = s.graph, s.decoration
    (b,) = tuple(s.contracted)
    star = g.leg(g.n)
    x, y = [h for h in g.vertex_half_edges(b) if h != star]
    involution = list(g.involution)
    legs = list(g.legs[:-1])
    if g.is_leg(x) and g.is_leg(y):
        raise GraphException("bubble carrying the curve point and two markings has no ordinary vertex", invariant="bubble")
    if g.is_leg(y):
        x, y = y, x
    if g.is_leg(x):
        partner = g.involution[y]
        involution[partner] = partner
        legs[legs.index(x)] = partner
    else:
        x_partner, y_partner = g.involution[x], g.involution[y]
        involution[x_partner] = y_partner
        involution[y_partner] = x_partner
    graph, _, hmap = remove_half_edges(
        g.genus, g.half_edges, involution, legs, drop_vertices=[b], drop_half_edges=[star, x, y]
    )
    psi = [0] * graph.num_half_edges
    for h, new in hmap.items():
        psi[new] = d.psi[h]
    kappa = tuple(k for w, k in enumerate(d.kappa) if w != b)
    return DecoratedStratum(graph, Decoration(tuple(psi), kappa))


def _pushforward_terms(s: DecoratedStratum) -> Iterator[Tuple[DecoratedStratum, Fraction]]:
    if s.contracted:
        yield _contract_bubble(s), Fraction(1)
        return
    g, d = s.graph, s.decoration
    star = g.leg(g.n)
    v = g.half_edges[star]
    graph, vmap, hmap = remove_half_edges(g.genus, g.half_edges, g.involution, g.legs[:-1], drop_half_edges=[star])
    others = [h for h in g.vertex_half_edges(v) if h != star]
    base_psi = [0] * graph.num_half_edges
    for h, new in hmap.items():
        base_psi[new] = d.psi[h]
    base_kappa = list(d.kappa)
    scalar_kappa0 = g.valence(v) - 3
    for rest, s_power, coeff in _kappa_expansions(d.kappa[v]):
        power = s_power + d.psi[star]
        kappa = list(base_kappa)
        kappa[v] = rest
        if power >= 2:
            kappa[v] = add_kappa(rest, tuple([0] * (power - 2) + [1]))
            yield DecoratedStratum(graph, Decoration(tuple(base_psi), tuple(kappa))), coeff
        elif power == 1:
            if scalar_kappa0:
                yield DecoratedStratum(graph, Decoration(tuple(base_psi), tuple(kappa))), coeff * scalar_kappa0
        else:
            for h in others:
                if d.psi[h] >= 1:
                    psi = list(base_psi)
                    psi[hmap[h]] -= 1
                    yield DecoratedStratum(graph, Decoration(tuple(psi), tuple(kappa))), coeff


def forgetful_pushforward(c: TautClass) -> TautClass:
    """
    Push a class forward along the map forgetting the last marking.

    Accepts classes on the universal curve or on the plain (n+1)-marked
    stack; the result lives on the plain n-marked stack.
    """
    n = c.ambient.n - 1
    if n < 0:
        raise AmbientMismatchException("cannot forget a marking from the 0-marked stack")
    pairs: List[Tuple[DecoratedStratum, Fraction]] = []
    for stratum, x in c.items():
        pairs.extend((s, coeff * x) for s, coeff in _pushforward_terms(stratum))
    result = make_class(pairs, Ambient(n))
    logger.debug("forgetful pushforward n=%d: %d -> %d terms", n + 1, len(c), len(result))
    return result
