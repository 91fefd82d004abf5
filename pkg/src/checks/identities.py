"""
Identity checks.

Each check runs one known identity of the genus-0 Chow calculus on a small
range of instances:
- psi self-intersection and kappa closure through the universal curve
- psi boundary expressions and the WDVV relation
- the stabilization formulas and their compatibility with forgetful charts
- degree-one structure of the prestable Chow groups
"""

from itertools import combinations
from typing import Iterator, Sequence, Tuple

from src.calculus.forgetful import forgetful_pushforward, section_class
from src.calculus.product import product
from src.calculus.rewriting import psi_to_boundary
from src.calculus.stabilization import chain_graph, stabilization_pullback_kappa
from src.checks.base import BaseCheck
from src.graphs.enumeration import enumerate_graphs
from src.linalg.sparse import EchelonForm
from src.relations.ranks import chow_rank, is_zero, relation_matrix
from src.stable.compare import (
    forgetful_chart_pullback,
    is_stable_zero,
    restrict_to_stable,
    stable_chow_rank,
    stable_forgetful_pullback,
)
from src.strata.taut_class import (
    Ambient,
    TautClass,
    boundary_class,
    decorated,
    graph_class,
    kappa_class,
    make_class,
    psi_class,
)

Cases = Iterator[Tuple[str, bool]]


class PsiSelfIntersectionCheck(BaseCheck):
    name = "psi-self-intersection"
    description = "pi_*(D_i . D_i) = -psi_i for the section divisors D_i"

    def __init__(self, max_n: int = 5):
        self.max_n = max_n

    def evaluate(self) -> Cases:
        for n in range(1, self.max_n + 1):
            for i in range(1, n + 1):
                d = section_class(n, i)
                lhs = -forgetful_pushforward(product(d, d))
                yield f"n={n} i={i}", lhs == psi_class(n, i)


class KappaClosureCheck(BaseCheck):
    name = "kappa-closure"
    description = "pi_*(psi_*^(a+1)) = kappa_a on the universal curve"

    def __init__(self, max_n: int = 4, max_a: int = 4):
        self.max_n = max_n
        self.max_a = max_a

    def evaluate(self) -> Cases:
        for n in range(self.max_n + 1):
            for a in range(self.max_a + 1):
                pushed = forgetful_pushforward(psi_class(n + 1, n + 1, a + 1, universal=True))
                expected = TautClass.fundamental(n) * (n - 2) if a == 0 else kappa_class(n, a)
                yield f"n={n} a={a}", pushed == expected


def _psi_expression(n: int, i: int, j: int, l: int) -> TautClass:
    free = [m for m in range(1, n + 1) if m not in (i, j, l)]
    total = TautClass.zero(Ambient(n))
    for r in range(len(free) + 1):
        for chosen in combinations(free, r):
            side1 = [i, *chosen]
            total = total + boundary_class(n, side1, [m for m in range(1, n + 1) if m not in side1])
    return total


class PsiBoundaryCheck(BaseCheck):
    name = "psi-boundary"
    description = "psi classes agree with their boundary expressions modulo WDVV"

    def __init__(self, ns: Sequence[int] = (3, 4, 5)):
        self.ns = tuple(ns)

    def evaluate(self) -> Cases:
        yield "n=2", is_zero(psi_class(2, 1) + psi_class(2, 2) - psi_to_boundary(2, 1))
        for n in self.ns:
            for i in range(1, n + 1):
                yield f"n={n} i={i}", is_zero(psi_class(n, i) - psi_to_boundary(n, i))
                j, l = [m for m in range(n, 0, -1) if m != i][:2]
                yield f"n={n} i={i} fixed={j},{l}", is_zero(psi_class(n, i) - _psi_expression(n, i, j, l))


class WdvvCheck(BaseCheck):
    name = "wdvv"
    description = "D(12|34) = D(13|24) = D(14|23) on four markings"

    def evaluate(self) -> Cases:
        d12 = boundary_class(4, [1, 2], [3, 4])
        yield "12|34 - 13|24", is_zero(d12 - boundary_class(4, [1, 3], [2, 4]))
        yield "12|34 - 14|23", is_zero(d12 - boundary_class(4, [1, 4], [2, 3]))


class StabilizationKappaCheck(BaseCheck):
    name = "stabilization-kappa"
    description = "closed forms of st^* kappa_1 and st^* kappa_2"

    def __init__(self, ns: Sequence[int] = (3, 4, 5)):
        self.ns = tuple(ns)

    def evaluate(self) -> Cases:
        for n in self.ns:
            g1, g2 = chain_graph(n, 1), chain_graph(n, 2)
            h0 = g1.vertex_half_edges(0)[0]
            h1 = g1.involution[h0]
            yield f"n={n} kappa_1", stabilization_pullback_kappa(n, 1) == kappa_class(n, 1) + graph_class(g1)
            ambient = Ambient(n)
            expected = (
                kappa_class(n, 2)
                + make_class(
                    [
                        (decorated(g1, kappa={0: {1: 1}}), -3),
                        (decorated(g1, psi={h0: 1}), 2),
                        (decorated(g1, psi={h1: 1}), 1),
                        (decorated(g2), -3),
                    ],
                    ambient,
                )
            )
            yield f"n={n} kappa_2", stabilization_pullback_kappa(n, 2) == expected


class ForgetfulStabilizationCheck(BaseCheck):
    name = "forgetful-stabilization"
    description = "F_m^* st^* kappa_1 agrees with the stable forgetful pullback of kappa_1"

    def __init__(self, cases: Sequence[Tuple[int, int]] = ((3, 1), (3, 2), (4, 1))):
        self.cases = tuple(cases)

    def evaluate(self) -> Cases:
        for n, m in self.cases:
            via_charts = forgetful_chart_pullback(stabilization_pullback_kappa(n, 1), m)
            iterated = kappa_class(n, 1)
            for _ in range(m):
                iterated = stable_forgetful_pullback(iterated)
            yield f"n={n} m={m}", is_stable_zero(via_charts - restrict_to_stable(iterated))


class PullbackVanishingCheck(BaseCheck):
    name = "pullback-vanishing"
    description = "F_3^*(psi_1 + psi_2 - D(1|2)) vanishes on five markings"

    def evaluate(self) -> Cases:
        c = psi_class(2, 1) + psi_class(2, 2) - boundary_class(2, [1], [2])
        yield "n=2 m=3", is_stable_zero(forgetful_chart_pullback(c, 3))


class UnstableDivisorsCheck(BaseCheck):
    name = "unstable-divisors"
    description = "the n + 1 unstable one-edge strata are independent in CH^1"

    def __init__(self, ns: Sequence[int] = (3, 4, 5)):
        self.ns = tuple(ns)

    def evaluate(self) -> Cases:
        for n in self.ns:
            basis, matrix = relation_matrix(n, 1)
            echelon = EchelonForm(matrix.num_cols)
            for row in matrix.rows:
                echelon.add(row)
            unstable = [g for g in enumerate_graphs(n, 1) if not g.is_stable()]
            added = sum(1 for g in unstable if echelon.add(basis.coordinates(graph_class(g))))
            yield f"n={n}", len(unstable) == n + 1 and added == n + 1


class DegreeOneRankCheck(BaseCheck):
    name = "degree-one-rank"
    description = "rank CH^1 = (n + 1) + rank CH^1 of the stable space"

    def __init__(self, ns: Sequence[int] = (4, 5, 6)):
        self.ns = tuple(ns)

    def evaluate(self) -> Cases:
        for n in self.ns:
            yield f"n={n}", chow_rank(n, 1) == n + 1 + stable_chow_rank(n, 1)
