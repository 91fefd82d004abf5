"""
Tests for WDVV relations, Chow ranks, vanishing tests and relation export.
"""

import json

import pytest

from src.core import DegreeException, GraphException
from src.graphs import PrestableGraph
from src.relations import (
    chow_rank,
    enumerate_wdvv_relations,
    is_zero,
    relation_matrix,
    relation_matrix_dict,
    relation_matrix_json,
    relation_matrix_market,
    wdvv_on_vertex,
)
from src.strata import (
    Decoration,
    MaxEdges,
    TautClass,
    boundary_class,
    decorated,
    enumerate_normal_form_basis,
    graph_class,
    kappa_class,
    psi_class,
)
from src.strata.substacks import AllGraphs
from src.calculus.rewriting import psi_to_boundary
from tests.oracles import dense_rank


def _golden_cells(read_data, limit, max_degree, floor=0):
    table = json.loads(read_data("chow_ranks.json"))
    return [
        (int(n), d, value)
        for n, column in table.items()
        for d, value in enumerate(column)
        if floor < value <= limit and d <= max_degree
    ]


class TestWdvvOnVertex:
    def test_four_point_relation(self):
        g = PrestableGraph.trivial(4)
        relation = wdvv_on_vertex(g, Decoration.trivial(g), 0, [0, 1, 2, 3])
        expected = boundary_class(4, [1, 2], [3, 4]) - boundary_class(4, [1, 3], [2, 4])
        assert relation == expected

    def test_other_pairing(self):
        g = PrestableGraph.trivial(4)
        relation = wdvv_on_vertex(g, Decoration.trivial(g), 0, [0, 1, 2, 3], pairing="14|23")
        assert relation == boundary_class(4, [1, 2], [3, 4]) - boundary_class(4, [1, 4], [2, 3])

    def test_remaining_half_edges_are_distributed(self):
        g = PrestableGraph.trivial(5)
        relation = wdvv_on_vertex(g, Decoration.trivial(g), 0, [0, 1, 2, 3])
        assert len(relation) == 4

    def test_too_few_half_edges(self):
        g = PrestableGraph.trivial(3)
        with pytest.raises(GraphException) as info:
            wdvv_on_vertex(g, Decoration.trivial(g), 0, [0, 1, 2, 2])
        assert info.value.invariant == "wdvv"

    def test_repeated_half_edges(self):
        g = PrestableGraph.trivial(4)
        with pytest.raises(GraphException):
            wdvv_on_vertex(g, Decoration.trivial(g), 0, [0, 1, 2, 2])

    def test_decoration_must_be_trivial_at_vertex(self):
        g = PrestableGraph.trivial(4)
        with pytest.raises(GraphException):
            wdvv_on_vertex(g, decorated(g, psi={0: 1}).decoration, 0, [0, 1, 2, 3])

    def test_unknown_pairing(self):
        g = PrestableGraph.trivial(4)
        with pytest.raises(GraphException):
            wdvv_on_vertex(g, Decoration.trivial(g), 0, [0, 1, 2, 3], pairing="12|34")

    def test_basis_mismatch(self):
        basis = enumerate_normal_form_basis(4, 1)
        with pytest.raises(ValueError):
            enumerate_wdvv_relations(5, 1, AllGraphs(), basis)


class TestChowRank:
    def test_degree_zero_is_one(self):
        for n in range(6):
            assert chow_rank(n, 0) == 1

    def test_negative_degree(self):
        assert chow_rank(3, -1) == 0

    @pytest.mark.golden
    def test_small_golden_ranks(self, read_data):
        for n, d, value in _golden_cells(read_data, 40, 2):
            assert chow_rank(n, d) == value, (n, d)

    @pytest.mark.slow
    @pytest.mark.golden
    def test_larger_golden_ranks(self, read_data):
        for n, d, value in _golden_cells(read_data, 900, 8):
            assert chow_rank(n, d) == value, (n, d)

    @pytest.mark.slow
    @pytest.mark.golden
    def test_largest_golden_ranks_up_to_degree_four(self, read_data):
        cells = _golden_cells(read_data, 10**6, 4, floor=900)
        assert {(n, d) for n, d, _ in cells} == {(5, 4), (6, 3), (8, 2)}
        for n, d, value in cells:
            assert chow_rank(n, d) == value, (n, d)

    @pytest.mark.parametrize("n,expected", [(3, 4), (4, 6), (5, 11)])
    def test_degree_one(self, n, expected):
        assert chow_rank(n, 1) == expected

    def test_open_substack_of_trivial_graphs(self):
        spec = MaxEdges(0)
        assert [chow_rank(0, d, spec) for d in range(5)] == [1, 0, 1, 0, 1]

    def test_four_point_relation_matrix(self):
        basis, matrix = relation_matrix(4, 1)
        assert len(basis) == 8
        assert matrix.num_rows == 2
        assert dense_rank(matrix.to_dense()) == 2


class TestIsZero:
    def test_wdvv_relation_vanishes(self):
        assert is_zero(boundary_class(4, [1, 2], [3, 4]) - boundary_class(4, [1, 3], [2, 4]))

    def test_single_boundary_divisor_does_not_vanish(self):
        assert not is_zero(boundary_class(4, [1, 2], [3, 4]))
        assert not is_zero(psi_class(3, 1))

    @pytest.mark.parametrize("n,i", [(3, 1), (4, 2), (5, 5)])
    def test_psi_equals_boundary_expression(self, n, i):
        assert is_zero(psi_class(n, i) - psi_to_boundary(n, i))

    def test_two_marked_psi_sum(self):
        assert is_zero(psi_class(2, 1) + psi_class(2, 2) - psi_to_boundary(2, 1))

    def test_kappa_one_with_three_markings(self):
        g = PrestableGraph.build([[], [1, 2, 3]], [(0, 1)])
        assert is_zero(kappa_class(3, 1) + graph_class(g))

    def test_zero_class(self):
        assert is_zero(TautClass.zero(psi_class(3, 1).ambient))

    def test_rejects_mixed_degrees(self):
        with pytest.raises(DegreeException):
            is_zero(psi_class(3, 1) + TautClass.fundamental(3))

    def test_rejects_universal_classes(self):
        with pytest.raises(DegreeException):
            is_zero(psi_class(3, 1, universal=True))


class TestExport:
    def test_relation_matrix_dict(self):
        data = relation_matrix_dict(4, 1)
        assert data["n"] == 4 and data["d"] == 1
        assert data["spec"] == AllGraphs().name
        assert data["shape"] == [2, 8]
        assert len(data["basis"]) == 8
        for i, j, value in data["entries"]:
            assert 0 <= i < 2 and 0 <= j < 8
            assert "/" in value

    def test_json_matches_dict(self):
        assert json.loads(relation_matrix_json(4, 1)) == relation_matrix_dict(4, 1)

    def test_matrix_market_header(self):
        lines = relation_matrix_market(4, 1).splitlines()
        rows, cols, _ = lines[1].split()
        assert (rows, cols) == ("2", "8")
