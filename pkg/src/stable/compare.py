"""
Stable comparison - boundary strata of the stable moduli space and pullbacks into it.

Classes on the stable space are combinations of undecorated stable graphs
(the Kontsevich-Manin generators) modulo WDVV relations glued into vertices.
Prestable classes are compared with them through the forgetful charts F_m:
pull back along F_m, drop everything supported on unstable graphs and
rewrite the remaining psi/kappa decorations into boundary strata.
"""

import csv
import io
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from itertools import product as cartesian
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.calculus.forgetful import forgetful_pullback
from src.calculus.rewriting import vertex_rewrite
from src.core import NormalizationException, ValidationException
from src.core.logging import progress
from src.graphs.enumeration import enumerate_stable_graphs
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import add_leg
from src.linalg.sparse import EchelonForm, SparseRationalMatrix, rank
from src.relations.ranks import chow_rank
from src.relations.wdvv import PAIRINGS, RelationVector, wdvv_on_vertex
from src.strata.decoration import Decoration, DecoratedStratum, DecorationPolynomial, kappa_vector
from src.strata.normal_form import enumerate_normal_form_basis
from src.strata.taut_class import Ambient, TautClass, class_sum, make_class, stratum_key

logger = logging.getLogger(__name__)


def _require_stable_ambient(n: int) -> None:
    if n < 3:
        raise ValidationException(f"the stable moduli space needs n >= 3, got {n}", field="n")


def stable_basis(n: int, d: int) -> Tuple[PrestableGraph, ...]:
    """Stable n-marked genus-0 graphs with d edges, one per isomorphism class."""
    _require_stable_ambient(n)
    return enumerate_stable_graphs(n, d)


@lru_cache(maxsize=256)
def _basis_index(n: int, d: int) -> Dict[bytes, int]:
    return {stratum_key(DecoratedStratum.bare(g)): i for i, g in enumerate(stable_basis(n, d))}


def stable_coordinates(c: TautClass, d: int) -> RelationVector:
    """
    Coordinates of a pure-boundary stable class over stable_basis(n, d).

    Raises:
        NormalizationException: If a term is decorated, unstable or of another codimension.
    """
    index = _basis_index(c.ambient.n, d)
    coords: RelationVector = {}
    for key, stratum, value in c.keyed_items():
        hit = index.get(key)
        if hit is None:
            raise NormalizationException(f"term {stratum.graph!r} is not a stable boundary stratum with {d} edges")
        coords[hit] = value
    return coords


@lru_cache(maxsize=256)
def stable_wdvv_relations(n: int, d: int) -> Tuple[RelationVector, ...]:
    """WDVV relations glued into stable graphs with d-1 edges, over stable_basis(n, d)."""
    _require_stable_ambient(n)
    seen = set()
    relations: List[RelationVector] = []
    if d < 1:
        return ()
    for g in enumerate_stable_graphs(n, d - 1):
        for v in range(g.num_vertices):
            at_v = g.vertex_half_edges(v)
            if len(at_v) < 4:
                continue
            for quadruple in combinations(at_v, 4):
                for pairing in PAIRINGS:
                    coords = stable_coordinates(wdvv_on_vertex(g, Decoration.trivial(g), v, quadruple, pairing), d)
                    if not coords:
                        continue
                    lead = coords[min(coords)]
                    key = tuple(sorted((i, x / lead) for i, x in coords.items()))
                    if key not in seen:
                        seen.add(key)
                        relations.append(dict(key))
    logger.debug("stable wdvv relations n=%d d=%d: %d vectors", n, d, len(relations))
    return tuple(relations)


@lru_cache(maxsize=256)
def _stable_echelon(n: int, d: int) -> EchelonForm:
    echelon = EchelonForm(len(stable_basis(n, d)))
    for row in stable_wdvv_relations(n, d):
        echelon.add(row)
    return echelon


@lru_cache(maxsize=500_000)
def _restrict_stratum(s: DecoratedStratum) -> TautClass:
    ambient = Ambient(s.graph.n)
    if not s.graph.is_stable():
        return TautClass.zero(ambient)
    for v in range(s.graph.num_vertices):
        expansion = vertex_rewrite(s, v)
        if expansion is not None:
            children = make_class(expansion, ambient)
            return class_sum((_restrict_stratum(child) * x for child, x in children.items()), ambient)
    return make_class([(s, 1)], ambient)


def restrict_to_stable(c: TautClass) -> TautClass:
    """
    Image of a prestable class in the Chow ring of the stable space.

    Terms on graphs with an unstable vertex are dropped; psi and kappa
    decorations on stable vertices are rewritten into boundary strata.
    """
    if c.ambient.universal:
        raise ValidationException("restrict_to_stable needs a class on the plain stack", field="ambient")
    return class_sum((_restrict_stratum(s) * x for s, x in c.items()), c.ambient)


def _chart_terms(s: DecoratedStratum, m: int) -> List[Tuple[DecoratedStratum, Fraction]]:
    g, d = s.graph, s.decoration
    terms: List[Tuple[DecoratedStratum, Fraction]] = []
    for placement in cartesian(range(g.num_vertices), repeat=m):
        counts = [placement.count(v) for v in range(g.num_vertices)]
        if any(g.valence(v) + counts[v] < 3 for v in range(g.num_vertices)):
            continue
        lifted = g
        new_legs: Dict[int, List[int]] = {}
        for v in placement:
            lifted, h = add_leg(lifted, v)
            new_legs.setdefault(v, []).append(h)
        psi = tuple(d.psi) + (0,) * m
        kappa = list(d.kappa)
        for v in new_legs:
            kappa[v] = ()
        poly = DecorationPolynomial.monomial(Decoration(psi, tuple(kappa)))
        for v, hs in new_legs.items():
            for a, e in enumerate(d.kappa[v], start=1):
                if not e:
                    continue
                factor = DecorationPolynomial()
                kappa_part = [()] * lifted.num_vertices
                kappa_part[v] = kappa_vector({a: 1})
                factor.add(Decoration((0,) * lifted.num_half_edges, tuple(kappa_part)), 1)
                for h in hs:
                    psi_part = [0] * lifted.num_half_edges
                    psi_part[h] = a
                    factor.add(Decoration(tuple(psi_part), ((),) * lifted.num_vertices), -1)
                for _ in range(e):
                    poly = poly * factor
        terms.extend((DecoratedStratum(lifted, dec), c) for dec, c in poly.items())
    return terms


def forgetful_chart_pullback(c: TautClass, m: int) -> TautClass:
    """
    F_m^* c restricted to the stable space with n + m markings.

    Raises:
        ValidationException: If n + m < 3.
    """
    n = c.ambient.n
    _require_stable_ambient(n + m)
    pairs: List[Tuple[DecoratedStratum, Fraction]] = []
    for stratum, x in c.items():
        pairs.extend((s, coeff * x) for s, coeff in _chart_terms(stratum, m))
    return restrict_to_stable(make_class(pairs, Ambient(n + m)))


def stable_forgetful_pullback(c: TautClass) -> TautClass:
    """
    Pullback along the stabilizing forgetful map of stable spaces.

    The universal-curve formulas apply verbatim; bubbles become ordinary
    3-valent vertices.
    """
    pulled = forgetful_pullback(c)
    ambient = Ambient(c.ambient.n + 1)
    return make_class(((DecoratedStratum(s.graph, s.decoration), x) for s, x in pulled.items()), ambient)


def is_stable_zero(c: TautClass) -> bool:
    """Whether a stable pure-codimension class vanishes modulo the WDVV relations."""
    restricted = restrict_to_stable(c)
    d = restricted.degree()
    if d is None:
        return True
    coords = stable_coordinates(restricted, d)
    return not coords or _stable_echelon(c.ambient.n, d).contains(coords)


def stable_chow_rank(n: int, d: int) -> int:
    """Rank of CH^d of the stable space: |basis| - rank of its WDVV relations."""
    basis = stable_basis(n, d)
    return len(basis) - _stable_echelon(n, d).rank


def image_rank(n: int, d: int, m: int) -> int:
    """
    Rank of F_m^*(CH^d) inside CH^d of the stable space with n + m markings.

    Raises:
        ValidationException: If n + m < 3.
    """
    big = n + m
    _require_stable_ambient(big)
    basis = enumerate_normal_form_basis(n, d)
    relations = stable_wdvv_relations(big, d)
    width = len(stable_basis(big, d))
    images: List[RelationVector] = []
    for b in progress(basis.classes, desc=f"F_{m}* n={n} d={d}"):
        coords = stable_coordinates(forgetful_chart_pullback(b, m), d)
        if coords:
            images.append(coords)
    base = rank(SparseRationalMatrix(width, list(relations)))
    total = rank(SparseRationalMatrix(width, list(relations) + images))
    value = total - base
    logger.info("image rank n=%d d=%d m=%d: %d", n, d, m, value)
    return value


def pullback_rank_table(
    pairs: Sequence[Tuple[int, int]],
    m_max: int,
    rank_of=image_rank,
) -> List[Dict[str, Any]]:
    """
    Rows of image ranks for (n, d) pairs and m = 0..m_max.

    Cells with n + m < 3 are None. A cell is exact when it reaches
    chow_rank(n, d); otherwise it is only a lower bound for that rank.
    """
    rows = []
    for n, d in pairs:
        cells: List[Optional[int]] = [rank_of(n, d, m) if n + m >= 3 else None for m in range(m_max + 1)]
        total = chow_rank(n, d)
        exact = [None if x is None else x == total for x in cells]
        rows.append({"n": n, "d": d, "chow_rank": total, "ranks": cells, "exact": exact})
    return rows


def pullback_rank_csv(rows: Sequence[Dict[str, Any]]) -> str:
    """
    CSV with columns n, d, chow_rank, m=0..

    Undefined cells are empty; cells below chow_rank are lower bounds and
    carry a ">=" prefix.
    """
    width = max((len(r["ranks"]) for r in rows), default=0)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "d", "chow_rank"] + [f"m={m}" for m in range(width)])
    for r in rows:
        cells = ["" if x is None else (x if ok else f">={x}") for x, ok in zip(r["ranks"], r["exact"])]
        writer.writerow([r["n"], r["d"], r["chow_rank"]] + cells)
    return buffer.getvalue()
