"""
Tests for decorations, tautological classes, substack specs, the normal-form
basis and Hilbert coefficients.
"""

from fractions import Fraction

import pytest

from src.core import AmbientMismatchException, DegreeException, GraphException, SubstackException
from src.graphs import PrestableGraph
from src.strata import (
    Ambient,
    CustomList,
    Decoration,
    DecoratedStratum,
    DecorationPolynomial,
    MaxEdges,
    Oesinghaus,
    Semistable,
    StableOnly,
    TautClass,
    boundary_class,
    check_contraction_closed,
    decorated,
    enumerate_normal_form_basis,
    get_spec_registry,
    graph_class,
    hilbert_coefficients,
    is_normal_form,
    kappa_class,
    make_class,
    psi_class,
    resolve_spec,
)
from src.strata.decoration import add_kappa, kappa_degree, kappa_vector, trim


class TestDecoration:
    def test_kappa_vectors(self):
        assert kappa_vector({2: 1}) == (0, 1)
        assert trim([1, 0, 0]) == (1,)
        assert kappa_degree((1, 2)) == 5
        assert add_kappa((1,), (0, 1)) == (1, 1)

    def test_from_maps_and_degree(self):
        g = PrestableGraph.build([[1, 2], []], [(0, 1)])
        d = Decoration.from_maps(g, psi={0: 2, 3: 1}, kappa={1: {1: 1, 3: 1}})
        assert d.degree == 7
        assert d.vertex_degree(g, 0) == 2
        assert d.kappa_at(1) == {1: 1, 3: 1}
        assert not d.is_trivial_at(g, 1)

    def test_from_maps_rejects_missing_ids(self):
        g = PrestableGraph.trivial(2)
        with pytest.raises(GraphException):
            Decoration.from_maps(g, psi={5: 1})
        with pytest.raises(GraphException):
            Decoration.from_maps(g, kappa={1: {1: 1}})

    def test_product_of_decorations(self):
        g = PrestableGraph.trivial(2)
        a = Decoration.from_maps(g, psi={0: 1})
        b = Decoration.from_maps(g, psi={0: 1}, kappa={0: {1: 1}})
        assert (a * b) == Decoration.from_maps(g, psi={0: 2}, kappa={0: {1: 1}})

    def test_polynomial_cancellation(self):
        g = PrestableGraph.trivial(1)
        d = Decoration.from_maps(g, psi={0: 1})
        poly = DecorationPolynomial.monomial(d, 2)
        poly.add(d, -2)
        assert not poly
        assert not DecorationPolynomial.monomial(d).scale(0)

    def test_codim_counts_edges(self):
        g = PrestableGraph.build([[1], [2]], [(0, 1)])
        assert DecoratedStratum(g, Decoration.from_maps(g, psi={0: 1})).codim == 2


class TestTautClass:
    def test_linear_combination(self):
        p = psi_class(3, 1)
        assert p + p == 2 * p
        assert not (p - p)
        assert (p * 3).terms == {next(iter(p.terms)): Fraction(3)}

    def test_isomorphic_strata_merge(self):
        assert boundary_class(4, [1, 2], [3, 4]) == boundary_class(4, [3, 4], [1, 2])
        assert boundary_class(4, [1, 2], [3, 4]) != boundary_class(4, [1, 3], [2, 4])

    def test_automorphic_decorations_merge(self):
        g = PrestableGraph.build([[], []], [(0, 1)])
        left = make_class([(decorated(g, psi={0: 1}), 1)])
        right = make_class([(decorated(g, psi={1: 1}), 1)])
        assert left == right

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatchException):
            psi_class(3, 1) + psi_class(4, 1)
        with pytest.raises(AmbientMismatchException):
            boundary_class(4, [1], [2, 3])

    def test_degree(self):
        assert psi_class(3, 1).degree() == 1
        assert boundary_class(4, [1, 2], [3, 4]).degree() == 1
        assert kappa_class(0, 2, power=2).degree() == 4
        assert TautClass.zero(Ambient(3)).degree() is None
        with pytest.raises(DegreeException):
            (psi_class(3, 1) + TautClass.fundamental(3)).degree()

    def test_homogeneous_and_filter(self):
        mixed = psi_class(3, 1) + TautClass.fundamental(3)
        assert mixed.homogeneous(0) == TautClass.fundamental(3)
        assert mixed.filter(lambda s: s.codim == 1) == psi_class(3, 1)

    def test_product_is_not_scalar_multiplication(self):
        with pytest.raises(TypeError):
            psi_class(3, 1) * psi_class(3, 2)

    def test_dict_round_trip(self):
        g = PrestableGraph.build([[1], [], [2]], [(0, 1), (1, 2)])
        c = make_class([(decorated(g, psi={3: 1}, kappa={1: {1: 1}}), Fraction(-3, 2))]) + psi_class(2, 1)
        assert TautClass.from_dict(c.to_dict()) == c

    def test_decorated_bubble_is_dropped(self):
        g = PrestableGraph.build([[1], [2, 3]], [(0, 1)])
        ambient = Ambient(3, universal=True)
        bare = make_class([(DecoratedStratum.bare(g, contracted=[1]), 1)], ambient)
        assert len(bare) == 1
        psi_on_bubble = DecoratedStratum(g, Decoration.from_maps(g, psi={1: 1}), frozenset({1}))
        assert not make_class([(psi_on_bubble, 1)], ambient)

    def test_bubbles_need_the_universal_ambient(self):
        g = PrestableGraph.build([[1], [2, 3]], [(0, 1)])
        with pytest.raises(AmbientMismatchException):
            make_class([(DecoratedStratum.bare(g, contracted=[1]), 1)], Ambient(3))

    def test_with_ambient(self):
        universal = psi_class(3, 3, universal=True)
        assert universal.with_ambient(Ambient(3)) == psi_class(3, 3)


class TestSubstacks:
    def test_registry_resolves_names(self):
        assert resolve_spec("max-edges:3") == MaxEdges(3)
        assert resolve_spec("stable") == StableOnly()
        assert resolve_spec("chains") == Semistable()
        assert resolve_spec("oesinghaus") == Oesinghaus()
        assert "all" in get_spec_registry().list_names()

    @pytest.mark.parametrize("text", ["nonsense", "max-edges", "max-edges:x", "stable:1", "max-edges:-1"])
    def test_bad_names(self, text):
        with pytest.raises(SubstackException):
            resolve_spec(text)

    def test_builtin_specs_are_contraction_closed(self):
        for spec in (MaxEdges(2), StableOnly(), Semistable()):
            check_contraction_closed(spec, 4, 3)
        check_contraction_closed(Oesinghaus(), 3, 3)

    def test_custom_list_without_trivial_graph_is_not_open(self):
        spec = CustomList([PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])], name="lonely")
        with pytest.raises(SubstackException):
            check_contraction_closed(spec, 4, 1)
        with pytest.raises(SubstackException):
            enumerate_normal_form_basis(4, 1, spec)

    def test_oesinghaus_allows_only_its_chains(self):
        spec = Oesinghaus()
        assert spec.allows(PrestableGraph.build([[1], [2, 3]], [(0, 1)]))
        assert spec.allows(PrestableGraph.build([[1], [], [2, 3]], [(0, 1), (1, 2)]))
        assert not spec.allows(PrestableGraph.build([[2], [1, 3]], [(0, 1)]))
        assert not spec.allows(PrestableGraph.build([[1], [2, 3], []], [(0, 1), (1, 2)]))


class TestNormalForm:
    def test_vertex_rules(self):
        one = PrestableGraph.trivial(1)
        three = PrestableGraph.trivial(3)
        empty = PrestableGraph.trivial(0)
        assert is_normal_form(decorated(one, psi={0: 3}))
        assert not is_normal_form(decorated(three, psi={0: 1}))
        assert is_normal_form(decorated(empty, kappa={0: {2: 2}}))
        assert not is_normal_form(decorated(empty, kappa={0: {1: 1}}))
        assert not is_normal_form(decorated(one, kappa={0: {1: 1}}))
        two = PrestableGraph.trivial(2)
        assert is_normal_form(decorated(two, psi={0: 2}))
        assert not is_normal_form(decorated(two, psi={0: 1, 1: 1}))

    @pytest.mark.parametrize("n,d,size", [(0, 0, 1), (0, 1, 1), (0, 2, 3), (1, 1, 2), (3, 0, 1)])
    def test_basis_sizes(self, n, d, size):
        assert len(enumerate_normal_form_basis(n, d)) == size

    def test_basis_classes_are_normal_forms(self):
        basis = enumerate_normal_form_basis(2, 2)
        for c in basis.classes:
            assert c.degree() == 2
            assert all(is_normal_form(s) for s, _ in c.items())

    def test_coordinates_of_basis_classes(self):
        basis = enumerate_normal_form_basis(3, 1)
        for i, c in enumerate(basis.classes):
            assert basis.coordinates(c * 5) == {i: Fraction(5)}

    def test_two_valent_binomial(self):
        basis = enumerate_normal_form_basis(2, 1)
        g = PrestableGraph.trivial(2)
        binomial = make_class([(decorated(g, psi={0: 1}), 1), (decorated(g, psi={1: 1}), -1)])
        assert len(basis.coordinates(binomial)) == 1


class TestHilbert:
    def test_max_edges_zero_alternates(self):
        assert hilbert_coefficients(0, MaxEdges(0), 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]

    def test_max_edges_one(self):
        assert hilbert_coefficients(0, MaxEdges(1), 8) == [1, 1, 2, 2, 3, 3, 4, 4, 5]

    def test_max_edges_two(self):
        assert hilbert_coefficients(0, MaxEdges(2), 8) == [1, 1, 3, 3, 7, 7, 13, 13, 21]

    @pytest.mark.slow
    def test_max_edges_three(self):
        assert hilbert_coefficients(0, MaxEdges(3), 8) == [1, 1, 3, 5, 10, 15, 26, 36, 54]

    def test_chains_with_two_markings_double(self):
        assert hilbert_coefficients(2, Semistable(), 6) == [1, 2, 4, 8, 16, 32, 64]

    def test_chains_with_three_markings(self):
        assert hilbert_coefficients(3, Semistable(), 4) == [1, 3, 9, 25, 66]

    @pytest.mark.slow
    def test_chains_with_three_markings_to_degree_six(self):
        assert hilbert_coefficients(3, Semistable(), 6) == [1, 3, 9, 25, 66, 168, 416]

    def test_oesinghaus(self):
        assert hilbert_coefficients(3, Oesinghaus(), 5) == [1, 1, 2, 4, 8, 16]

    @pytest.mark.slow
    def test_oesinghaus_to_degree_six(self):
        coefficients = hilbert_coefficients(3, Oesinghaus(), 6)
        assert coefficients[1:] == [2 ** (d - 1) for d in range(1, 7)]

    def test_default_spec_is_everything(self):
        assert hilbert_coefficients(0, max_degree=3) == [1, 1, 3, 5]
