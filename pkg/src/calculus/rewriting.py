"""
Rewriting - psi/kappa boundary expressions and normalization.

Vertex rules (v with k half-edges, decoration alpha_v):

- k >= 3, psi_h present: psi_h = sum of D(I1|I2) over I1 containing h with
  the two smallest other half-edges j, l in I2.
- k >= 2, kappa_a present: kappa_a = sum over S in H(v) minus {j, l} of the
  split with kappa_{a-1} on the S-side vertex (kappa_0 = |S| - 1).
- k = 2, psi on both half-edges: psi_h + psi_h' = [split].
- k = 1, kappa_a: kappa_a = -psi_h kappa_{a-1} + [leaf split, kappa_{a-1} on the leaf].
- k = 0: odd kappa goes to the one-edge graph, even kappa_{2b} with b >= 2 to
  kappa_2 kappa_{2b-2}, kappa_1 kappa_{2b-1} and the one-edge graph.

The main pass applies these until every vertex is in normal form up to the
2-valent binomials; a final pass rewrites single psi powers at 2-valent
vertices into binomials plus boundary terms.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from src.calculus.gluing import gluing_pushforward
from src.core import AmbientMismatchException, NormalizationException, ValidationException
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import split_vertex_with_map
from src.strata.decoration import Decoration, DecoratedStratum, KappaVector, add_kappa, kappa_vector, trim
from src.strata.taut_class import (
    Ambient,
    TautClass,
    boundary_class,
    class_sum,
    kappa_class,
    make_class,
    psi_class,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

Terms = List[Tuple[DecoratedStratum, Fraction]]


def _single(a: int) -> KappaVector:
    return kappa_vector({a: 1}) if a >= 1 else ()


def _remove_one(kappa: KappaVector, a: int) -> KappaVector:
    values = list(kappa)
    values[a - 1] -= 1
    return trim(values)


def _compositions(m: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for tail in _compositions(m - first, parts - 1):
            yield (first,) + tail


def distribute_kappa(kappa: KappaVector, targets: Sequence[int]) -> Iterator[Tuple[Dict[int, KappaVector], Fraction]]:
    """
    Expand prod_a (sum over targets of kappa_a)^{m_a} multinomially.

    Yields:
        (target -> kappa vector, multinomial coefficient).
    """
    per_index: List[List[Tuple[Tuple[int, ...], int]]] = []
    for m in kappa:
        options = []
        for parts in _compositions(m, len(targets)):
            coeff = factorial(m)
            for p in parts:
                coeff //= factorial(p)
            options.append((parts, coeff))
        per_index.append(options)

    def build(i: int, acc: List[List[int]], coeff: int) -> Iterator[Tuple[Dict[int, KappaVector], Fraction]]:
        if i == len(per_index):
            yield {t: trim(acc[j]) for j, t in enumerate(targets)}, Fraction(coeff)
            return
        for parts, c in per_index[i]:
            for j, p in enumerate(parts):
                acc[j].append(p)
            yield from build(i + 1, acc, coeff * c)
            for j in range(len(parts)):
                acc[j].pop()

    yield from build(0, [[] for _ in targets], 1)


def _with_split(
    s: DecoratedStratum,
    v: int,
    keep: Sequence[int],
    move: Sequence[int],
    psi: Mapping[int, int],
    kappa_kept: KappaVector,
    kappa_moved: KappaVector,
    rest: KappaVector,
    coeff: Fraction,
) -> Terms:
    """
    Split v: v keeps `keep`, a new vertex gets `move`.

    psi overrides refer to the old half-edge ids; kappa_kept / kappa_moved are
    placed on the two vertices and `rest` is distributed over both.
    """
    split = split_vertex_with_map(s.graph, v, keep, move)
    new = split.new_vertex
    base_psi = list(s.decoration.psi) + [0, 0]
    for h, e in psi.items():
        base_psi[h] = e
    terms: Terms = []
    for dist, c in distribute_kappa(rest, [v, new]):
        kappa = list(s.decoration.kappa) + [()]
        kappa[v] = add_kappa(kappa_kept, dist[v])
        kappa[new] = add_kappa(kappa_moved, dist[new])
        terms.append((DecoratedStratum(split.graph, Decoration(tuple(base_psi), tuple(kappa))), coeff * c))
    return terms


def _replace_vertex(s: DecoratedStratum, v: int, psi: Mapping[int, int], kappa_v: KappaVector, coeff: Fraction):
    new_psi = list(s.decoration.psi)
    for h, e in psi.items():
        new_psi[h] = e
    kappa = list(s.decoration.kappa)
    kappa[v] = kappa_v
    return DecoratedStratum(s.graph, Decoration(tuple(new_psi), tuple(kappa))), coeff


def _psi_rule(s: DecoratedStratum, v: int) -> Terms:
    d = s.decoration
    hs = s.graph.vertex_half_edges(v)
    h = next(x for x in hs if d.psi[x])
    j, l = [x for x in hs if x != h][:2]
    free = [x for x in hs if x not in (h, j, l)]
    terms: Terms = []
    for r in range(len(free) + 1):
        for chosen in combinations(free, r):
            side1 = [h, *chosen]
            side2 = [x for x in hs if x not in side1]
            terms += _with_split(s, v, side1, side2, {h: d.psi[h] - 1}, (), (), d.kappa[v], Fraction(1))
    return terms


def _kappa_rule(s: DecoratedStratum, v: int) -> Terms:
    d = s.decoration
    hs = s.graph.vertex_half_edges(v)
    a = next(i + 1 for i, e in enumerate(d.kappa[v]) if e)
    rest = _remove_one(d.kappa[v], a)
    free = hs[2:]
    terms: Terms = []
    for r in range(len(free) + 1):
        for chosen in combinations(free, r):
            if a == 1:
                coeff = Fraction(len(chosen) - 1)
                if not coeff:
                    continue
            else:
                coeff = Fraction(1)
            keep = [x for x in hs if x not in chosen]
            terms += _with_split(s, v, keep, list(chosen), {}, (), _single(a - 1), rest, coeff)
    return terms


def _leaf_kappa_rule(s: DecoratedStratum, v: int) -> Terms:
    d = s.decoration
    (h,) = s.graph.vertex_half_edges(v)
    a = next(i + 1 for i, e in enumerate(d.kappa[v]) if e)
    rest = _remove_one(d.kappa[v], a)
    # kappa_0 = -1 on a vertex with one half-edge
    lower, scale = (_single(a - 1), Fraction(1)) if a >= 2 else ((), Fraction(-1))
    terms: Terms = [_replace_vertex(s, v, {h: d.psi[h] + 1}, add_kappa(rest, lower), -scale)]
    terms += _with_split(s, v, [h], [], {}, (), lower, rest, scale)
    return terms


def _two_psi_rule(s: DecoratedStratum, v: int) -> Terms:
    d = s.decoration
    h, k = s.graph.vertex_half_edges(v)
    a, b = d.psi[h], d.psi[k]
    terms: Terms = [_replace_vertex(s, v, {h: a + 1, k: b - 1}, d.kappa[v], Fraction(-1))]
    terms += _with_split(s, v, [h], [k], {k: b - 1}, (), (), (), Fraction(1))
    return terms


def _edge_graph_terms(
    kappa_left: KappaVector,
    kappa_right: KappaVector,
    psi_left: int,
    psi_right: int,
    rest: KappaVector,
    coeff: Fraction,
) -> Terms:
    g = PrestableGraph.build([[], []], [(0, 1)])
    terms: Terms = []
    for dist, c in distribute_kappa(rest, [0, 1]):
        decoration = Decoration(
            psi=(psi_left, psi_right),
            kappa=(add_kappa(kappa_left, dist[0]), add_kappa(kappa_right, dist[1])),
        )
        terms.append((DecoratedStratum(g, decoration), coeff * c))
    return terms


def _isolated_kappa_rule(s: DecoratedStratum, v: int) -> Terms:
    kappa = s.decoration.kappa[v]
    odd = [i + 1 for i, e in enumerate(kappa) if e and i % 2 == 0]
    terms: Terms = []
    if odd:
        a = odd[0]
        rest = _remove_one(kappa, a)
        top = a - 1
        for i in range(top + 1):
            terms += _edge_graph_terms((), (), i, top - i, rest, -HALF * (-1) ** i)
        return terms
    a = next(i + 1 for i, e in enumerate(kappa) if e and i + 1 != 2)
    rest = _remove_one(kappa, a)
    terms.append(_replace_vertex(s, v, {}, add_kappa(rest, add_kappa(_single(2), _single(a - 2))), -HALF))
    terms.append(_replace_vertex(s, v, {}, add_kappa(rest, add_kappa(_single(1), _single(a - 1))), -HALF))
    terms += _edge_graph_terms(_single(1), _single(a - 2), 0, 0, rest, HALF)
    return terms


def vertex_rewrite(s: DecoratedStratum, v: int) -> Optional[Terms]:
    """
    One rewrite step at vertex v.

    Returns:
        The expansion as (stratum, coefficient) pairs, or None when the
        decoration at v is already in normal form (single psi powers at
        2-valent vertices included).
    """
    g, d = s.graph, s.decoration
    k = g.valence(v)
    kappa = d.kappa[v]
    psi = [d.psi[h] for h in g.vertex_half_edges(v)]
    if k >= 3:
        if any(psi):
            return _psi_rule(s, v)
        return _kappa_rule(s, v) if kappa else None
    if k == 2:
        if kappa:
            return _kappa_rule(s, v)
        return _two_psi_rule(s, v) if all(psi) else None
    if k == 1:
        return _leaf_kappa_rule(s, v) if kappa else None
    if not kappa or (len(kappa) == 2 and kappa[0] == 0):
        return None
    return _isolated_kappa_rule(s, v)


_active: Set[DecoratedStratum] = set()


@lru_cache(maxsize=500_000)
def _reduce_stratum(s: DecoratedStratum) -> TautClass:
    ambient = Ambient(s.graph.n)
    expansion = None
    for v in range(s.graph.num_vertices):
        expansion = vertex_rewrite(s, v)
        if expansion is not None:
            break
    if expansion is None:
        return make_class([(s, 1)], ambient)
    if s in _active:
        raise NormalizationException(f"rewriting of {s.graph!r} does not terminate")
    _active.add(s)
    try:
        children = make_class(expansion, ambient)
        return class_sum((_reduce_stratum(child) * x for child, x in children.items()), ambient)
    finally:
        _active.discard(s)


@lru_cache(maxsize=None)
def symmetrized_psi(c: int) -> TautClass:
    """
    psi_1^c on the 2-marked stack written in normal form.

    psi_1^c = (psi_1^c + (-psi_2)^c)/2 plus half the split graph carrying
    sum_k (-1)^{c-1-k} psi_1^k psi_2^{c-1-k}, each side normalized again.
    """
    if c == 0:
        return TautClass.fundamental(2)
    ambient = Ambient(2)
    parts = [(psi_class(2, 1, c) + psi_class(2, 2, c) * (-1) ** c) * HALF]
    split = PrestableGraph.build([[1], [2]], [(0, 1)])
    for k in range(c):
        glued = gluing_pushforward(split, {0: symmetrized_psi(k), 1: symmetrized_psi(c - 1 - k)})
        parts.append(glued * (HALF * (-1) ** (c - 1 - k)))
    return class_sum(parts, ambient)


def _symmetrize_stratum(s: DecoratedStratum) -> TautClass:
    g, d = s.graph, s.decoration
    local: Dict[int, TautClass] = {}
    matchings: Dict[int, Dict[int, int]] = {}
    for v in range(g.num_vertices):
        if g.valence(v) != 2:
            continue
        x, y = g.vertex_half_edges(v)
        if d.psi[y] and not d.psi[x]:
            x, y = y, x
        if not d.psi[x]:
            continue
        local[v] = symmetrized_psi(d.psi[x])
        matchings[v] = {1: x, 2: y}
    if not local:
        return make_class([(s, 1)], Ambient(g.n))
    return gluing_pushforward(g, local, matchings, base=d, ambient=Ambient(g.n))


def normalize(c: TautClass) -> TautClass:
    """
    Rewrite a class on the plain stack into normal form.

    Raises:
        AmbientMismatchException: For universal-curve classes.
        NormalizationException: If the rewriting revisits a stratum.
    """
    if c.ambient.universal:
        raise AmbientMismatchException("normalize needs a class on the plain stack")
    reduced = class_sum((_reduce_stratum(s) * x for s, x in c.items()), c.ambient)
    result = class_sum((_symmetrize_stratum(s) * x for s, x in reduced.items()), c.ambient)
    logger.debug("normalize n=%d: %d -> %d terms", c.ambient.n, len(c), len(result))
    return result


def reduce_class(c: TautClass) -> TautClass:
    """Main rewriting pass only (single psi powers at 2-valent vertices are kept)."""
    return class_sum((_reduce_stratum(s) * x for s, x in c.items()), c.ambient)


def psi_to_boundary(n: int, i: int, fixed: Optional[Sequence[int]] = None) -> TautClass:
    """
    Boundary expression for psi_i (n >= 3) or for psi_1 + psi_2 (n = 2).

    Args:
        n: Number of markings.
        i: Marking carrying psi.
        fixed: The two markings kept opposite i (n >= 3). Defaults to the two
            smallest labels other than i; any choice gives the same class.

    Raises:
        ValidationException: If n < 2, i is not a marking or fixed is not two
            distinct markings other than i.
    """
    if n < 2:
        raise ValidationException(f"psi boundary expressions need n >= 2, got {n}", field="n")
    if not 1 <= i <= n:
        raise ValidationException(f"marking {i} is not in 1..{n}", field="i")
    if n == 2:
        return boundary_class(2, [1], [2])
    if fixed is None:
        fixed = [m for m in range(1, n + 1) if m != i][:2]
    if len(set(fixed)) != 2 or i in fixed or not all(1 <= m <= n for m in fixed):
        raise ValidationException(f"fixed markings {list(fixed)} must be two labels in 1..{n} other than {i}", field="fixed")
    j, l = fixed
    free = [m for m in range(1, n + 1) if m not in (i, j, l)]
    parts = []
    for r in range(len(free) + 1):
        for chosen in combinations(free, r):
            side1 = [i, *chosen]
            parts.append(boundary_class(n, side1, [m for m in range(1, n + 1) if m not in side1]))
    return class_sum(parts, Ambient(n))


def kappa_to_preferred(n: int, a: int) -> TautClass:
    """
    kappa_a written through kappa_2 powers (n = 0) or psi powers (n >= 1) plus boundary terms.

    kappa_0 is the scalar n - 2.
    """
    if a < 0:
        raise ValidationException(f"kappa index must be >= 0, got {a}", field="a")
    if a == 0:
        return TautClass.fundamental(n) * (n - 2)
    return reduce_class(kappa_class(n, a))
