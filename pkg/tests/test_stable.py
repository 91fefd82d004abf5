"""
Tests for the stable moduli space comparison and forgetful-chart image ranks.
"""

import pytest

from src.core import NormalizationException, ValidationException
from src.graphs import PrestableGraph
from src.calculus import product, stabilization_pullback
from src.relations import chow_rank
from src.stable import (
    forgetful_chart_pullback,
    image_rank,
    is_stable_zero,
    pullback_rank_csv,
    pullback_rank_table,
    restrict_to_stable,
    stable_basis,
    stable_chow_rank,
    stable_coordinates,
    stable_forgetful_pullback,
    stable_wdvv_relations,
)
from src.strata import Ambient, TautClass, boundary_class, graph_class, kappa_class, psi_class
from tests.oracles import dense_rank


class TestStableBasis:
    @pytest.mark.parametrize("n,d,size", [(3, 0, 1), (4, 1, 3), (5, 1, 10), (3, 1, 0)])
    def test_sizes(self, n, d, size):
        assert len(stable_basis(n, d)) == size

    def test_needs_three_markings(self):
        with pytest.raises(ValidationException):
            stable_basis(2, 0)

    def test_coordinates_of_a_divisor(self):
        d = boundary_class(5, [1, 2], [3, 4, 5])
        coords = stable_coordinates(d * 3, 1)
        assert len(coords) == 1
        assert list(coords.values()) == [3]

    def test_coordinates_reject_decorations(self):
        with pytest.raises(NormalizationException):
            stable_coordinates(psi_class(4, 1), 1)


class TestStableRanks:
    @pytest.mark.parametrize("n,d,expected", [(4, 0, 1), (4, 1, 1), (5, 1, 5), (5, 2, 1), (6, 1, 16)])
    def test_known_ranks(self, n, d, expected):
        assert stable_chow_rank(n, d) == expected

    @pytest.mark.parametrize("n,expected", [(4, 2), (5, 5)])
    def test_relation_ranks(self, n, expected):
        relations = stable_wdvv_relations(n, 1)
        width = len(stable_basis(n, 1))
        dense = [[row.get(j, 0) for j in range(width)] for row in relations]
        assert dense_rank(dense) == expected

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_unstable_divisors_add_n_plus_one(self, n):
        assert chow_rank(n, 1) == (n + 1) + stable_chow_rank(n, 1)


class TestStableClasses:
    def test_wdvv_vanishes(self):
        assert is_stable_zero(boundary_class(4, [1, 2], [3, 4]) - boundary_class(4, [1, 3], [2, 4]))
        assert not is_stable_zero(boundary_class(4, [1, 2], [3, 4]))

    def test_psi_is_a_point_on_four_markings(self):
        assert is_stable_zero(psi_class(4, 1) - boundary_class(4, [1, 2], [3, 4]))

    def test_restriction_drops_unstable_graphs(self):
        assert not restrict_to_stable(boundary_class(4, [1], [2, 3, 4]))
        d = boundary_class(4, [1, 2], [3, 4])
        assert restrict_to_stable(d) == d

    def test_forgetful_pullback_of_divisor(self):
        pulled = stable_forgetful_pullback(boundary_class(4, [1, 2], [3, 4]))
        assert pulled.ambient == Ambient(5)
        assert pulled == boundary_class(5, [1, 2, 5], [3, 4]) + boundary_class(5, [1, 2], [3, 4, 5])

    def test_forgetful_pullback_of_psi(self):
        tail = PrestableGraph.build([[2, 3, 4], [1, 5]], [(0, 1)])
        assert stable_forgetful_pullback(psi_class(4, 1)) == psi_class(5, 1) - graph_class(tail)

    def test_chart_pullback_of_fundamental_class(self):
        assert forgetful_chart_pullback(TautClass.fundamental(2), 1) == TautClass.fundamental(3)

    def test_chart_pullback_needs_stable_target(self):
        with pytest.raises(ValidationException):
            forgetful_chart_pullback(TautClass.fundamental(1), 1)


class TestStabilizationSection:
    @pytest.mark.parametrize("n,d", [(3, 0), (4, 0), (4, 1), (5, 1), (5, 2)])
    def test_restriction_undoes_stabilization_on_strata(self, n, d):
        for g in stable_basis(n, d):
            c = graph_class(g)
            assert is_stable_zero(restrict_to_stable(stabilization_pullback(c)) - c)

    @pytest.mark.parametrize(
        "c",
        [
            psi_class(4, 2),
            kappa_class(5, 1),
            psi_class(5, 1, 2),
            kappa_class(5, 2),
            product(psi_class(5, 3), kappa_class(5, 1)),
        ],
    )
    def test_restriction_undoes_stabilization_on_decorations(self, c):
        assert is_stable_zero(restrict_to_stable(stabilization_pullback(c)) - c)


class TestImageRank:
    @pytest.mark.parametrize("n,d,m,expected", [(3, 1, 2, 4), (2, 1, 3, 3), (3, 1, 0, 0), (2, 0, 1, 1)])
    def test_known_values(self, n, d, m, expected):
        assert image_rank(n, d, m) == expected

    @pytest.mark.slow
    def test_codimension_two_without_markings(self):
        assert image_rank(0, 2, 6) == 2

    @pytest.mark.parametrize("n,d,m_max", [(2, 1, 4), (3, 1, 4), (2, 0, 3), (4, 1, 3), (1, 1, 4)])
    def test_monotone_and_saturating(self, n, d, m_max):
        total = chow_rank(n, d)
        ranks = [image_rank(n, d, m) for m in range(max(0, 3 - n), m_max + 1)]
        assert ranks == sorted(ranks)
        assert all(r <= total for r in ranks)
        if total in ranks:
            assert all(r == total for r in ranks[ranks.index(total):])

    @pytest.mark.slow
    def test_codimension_two_row_with_three_markings(self):
        assert [image_rank(3, 2, m) for m in range(2, 6)] == [1, 8, 16, 16]
        assert chow_rank(3, 2) == 16

    def test_bounded_by_chow_rank(self):
        for m in range(1, 4):
            assert image_rank(2, 1, m) <= chow_rank(2, 1)

    def test_table_with_injected_ranks(self):
        rows = pullback_rank_table([(2, 1)], 3, rank_of=lambda n, d, m: min(m, 3))
        (row,) = rows
        assert row["chow_rank"] == 3
        assert row["ranks"] == [None, 1, 2, 3]
        assert row["exact"] == [None, False, False, True]

    def test_csv_leaves_undefined_cells_empty(self):
        rows = pullback_rank_table([(2, 0)], 2, rank_of=lambda n, d, m: 1)
        lines = pullback_rank_csv(rows).splitlines()
        assert lines[0] == "n,d,chow_rank,m=0,m=1,m=2"
        assert lines[1] == "2,0,1,,1,1"

    def test_csv_marks_lower_bounds(self):
        rows = pullback_rank_table([(2, 1)], 3, rank_of=lambda n, d, m: min(m, 3))
        assert pullback_rank_csv(rows).splitlines()[1] == "2,1,3,,>=1,>=2,3"
