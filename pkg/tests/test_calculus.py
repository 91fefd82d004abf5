"""
Tests for gluing, products, forgetful maps, stabilization and normalization.
"""

from fractions import Fraction
from itertools import product as pairs_of

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core import AmbientMismatchException, GraphException, ValidationException
from src.calculus import (
    StabilizationSeries,
    chain_graph,
    forgetful_pullback,
    forgetful_pushforward,
    generic_structures,
    gluing_pushforward,
    kappa_to_preferred,
    normalize,
    power,
    product,
    psi_to_boundary,
    restrict_to_open,
    section_class,
    smooth_forgetful_pullback,
    stabilization_pullback,
    stabilization_pullback_psi,
)
from src.graphs import PrestableGraph, enumerate_graphs
from src.relations import is_zero
from src.stable import forgetful_chart_pullback, is_stable_zero
from src.strata import (
    Ambient,
    TautClass,
    boundary_class,
    decorated,
    enumerate_normal_form_basis,
    graph_class,
    is_normal_form,
    kappa_class,
    make_class,
    psi_class,
)
from tests.oracles import brute_force_structure_count


@st.composite
def basis_tuples(draw, size: int, max_n: int, max_degree: int):
    """size normal-form basis classes on a common stack with total degree <= max_degree."""
    n = draw(st.integers(min_value=0, max_value=max_n))
    budget = max_degree
    chosen = []
    for _ in range(size):
        d = draw(st.integers(min_value=0, max_value=budget))
        budget -= d
        classes = enumerate_normal_form_basis(n, d).classes
        chosen.append(classes[draw(st.integers(min_value=0, max_value=len(classes) - 1))])
    return tuple(chosen)


class TestGluing:
    def test_fundamental_classes_glue_to_the_graph(self):
        g = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        glued = gluing_pushforward(g, {0: TautClass.fundamental(3), 1: TautClass.fundamental(3)})
        assert glued == graph_class(g)

    def test_psi_lands_on_matched_half_edge(self):
        g = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        glued = gluing_pushforward(g, {0: psi_class(3, 1)})
        assert glued == make_class([(decorated(g, psi={0: 1}), 1)])

    def test_boundary_class_refines_a_vertex(self):
        g = PrestableGraph.build([[1, 2, 3], [4, 5]], [(0, 1)])
        glued = gluing_pushforward(g, {0: boundary_class(4, [1, 2], [3, 4])})
        expected = PrestableGraph.build([[1, 2], [3], [4, 5]], [(0, 1), (1, 2)])
        assert glued == graph_class(expected)

    def test_arity_mismatch(self):
        g = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        with pytest.raises(GraphException) as info:
            gluing_pushforward(g, {0: psi_class(4, 1)})
        assert info.value.invariant == "arity"

    def test_coefficients_multiply(self):
        g = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        glued = gluing_pushforward(g, {0: TautClass.fundamental(3) * 2, 1: TautClass.fundamental(3) * Fraction(1, 3)})
        assert glued == graph_class(g, Fraction(2, 3))


class TestGenericStructures:
    @pytest.mark.parametrize(
        "n,pa,pb",
        [(3, 1, 1), (4, 1, 1), (2, 1, 1), (3, 1, 2), (2, 2, 1)],
    )
    def test_counts_match_brute_force(self, n, pa, pb):
        for a, b in pairs_of(enumerate_graphs(n, pa), enumerate_graphs(n, pb)):
            assert len(generic_structures(a, b)) == brute_force_structure_count(a, b), (a, b)

    def test_trivial_factor(self):
        b = PrestableGraph.build([[1], [2, 3]], [(0, 1)])
        (structure,) = generic_structures(PrestableGraph.trivial(3), b)
        assert structure.graph == b
        assert structure.excess_rank == 0

    def test_self_intersection_structures(self):
        a = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        structures = generic_structures(a, a)
        assert len(structures) == 3
        assert sorted(s.excess_rank for s in structures) == [0, 0, 1]


class TestProduct:
    def test_fundamental_class_is_the_unit(self):
        c = psi_class(4, 2) + boundary_class(4, [1, 3], [2, 4]) * 3
        assert product(TautClass.fundamental(4), c) == c
        assert product(c, TautClass.fundamental(4)) == c

    def test_boundary_self_intersection(self):
        a = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        chain = PrestableGraph.build([[1, 2], [], [3, 4]], [(0, 1), (1, 2)])
        d = graph_class(a)
        expected = make_class(
            [(decorated(a, psi={4: 1}), -1), (decorated(a, psi={5: 1}), -1), (decorated(chain), 2)]
        )
        assert product(d, d) == expected

    @pytest.mark.parametrize("i,j", [(0, 1), (2, 5), (3, 3), (7, 4)])
    def test_commutative_on_divisors(self, i, j):
        divisors = [graph_class(g) for g in enumerate_graphs(4, 1)]
        assert product(divisors[i], divisors[j]) == product(divisors[j], divisors[i])

    @given(basis_tuples(2, max_n=4, max_degree=3))
    @settings(max_examples=50, deadline=None)
    def test_commutative(self, pair):
        a, b = pair
        assert is_zero(product(a, b) - product(b, a))

    @given(basis_tuples(3, max_n=4, max_degree=3))
    @settings(max_examples=50, deadline=None)
    def test_associative(self, triple):
        a, b, c = triple
        assert is_zero(product(product(a, b), c) - product(a, product(b, c)))

    @pytest.mark.slow
    @given(basis_tuples(2, max_n=5, max_degree=4))
    @settings(max_examples=60, deadline=None)
    def test_commutative_up_to_degree_four(self, pair):
        a, b = pair
        assert is_zero(product(a, b) - product(b, a))

    @pytest.mark.slow
    @given(basis_tuples(3, max_n=5, max_degree=4))
    @settings(max_examples=60, deadline=None)
    def test_associative_up_to_degree_four(self, triple):
        a, b, c = triple
        assert is_zero(product(product(a, b), c) - product(a, product(b, c)))

    def test_psi_times_boundary(self):
        a = PrestableGraph.build([[1, 2], [3, 4]], [(0, 1)])
        assert product(psi_class(4, 1), graph_class(a)) == make_class([(decorated(a, psi={0: 1}), 1)])

    def test_power(self):
        assert power(psi_class(2, 1), 0) == TautClass.fundamental(2)
        assert power(kappa_class(0, 1), 2) == kappa_class(0, 1, power=2)

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatchException):
            product(psi_class(3, 1), psi_class(4, 1))


class TestForgetful:
    def test_pullback_of_fundamental_class(self):
        assert smooth_forgetful_pullback(TautClass.fundamental(3)) == TautClass.fundamental(4)

    def test_pullback_of_psi_on_open_part(self):
        assert smooth_forgetful_pullback(psi_class(3, 1)) == psi_class(4, 1)

    def test_pullback_of_psi_has_section_term(self):
        pulled = forgetful_pullback(psi_class(2, 1))
        assert pulled - psi_class(3, 1, universal=True) == section_class(2, 1) * -1

    def test_pullback_of_boundary_divisor(self):
        pulled = smooth_forgetful_pullback(boundary_class(3, [1], [2, 3]))
        assert pulled == boundary_class(4, [1, 4], [2, 3]) + boundary_class(4, [1], [2, 3, 4])

    def test_pullback_rejects_universal_classes(self):
        with pytest.raises(AmbientMismatchException):
            forgetful_pullback(psi_class(3, 1, universal=True))

    def test_restrict_to_open_drops_bubbles(self):
        assert not restrict_to_open(section_class(3, 2))
        plain = psi_class(3, 1)
        assert restrict_to_open(plain) is plain

    def test_pushforward_of_fundamental_class_vanishes(self):
        assert not forgetful_pushforward(TautClass.fundamental(4))

    def test_string_equation(self):
        assert forgetful_pushforward(psi_class(4, 1)) == TautClass.fundamental(3)

    def test_dilaton_equation(self):
        assert forgetful_pushforward(psi_class(4, 4)) == TautClass.fundamental(3)
        assert forgetful_pushforward(psi_class(6, 6)) == TautClass.fundamental(5) * 3

    @pytest.mark.parametrize("n,a", [(0, 1), (2, 2), (3, 1)])
    def test_kappa_from_psi_powers(self, n, a):
        assert forgetful_pushforward(psi_class(n + 1, n + 1, a + 1)) == kappa_class(n, a)

    @pytest.mark.parametrize(
        "x", [TautClass.fundamental(3), psi_class(3, 1), boundary_class(4, [1, 2], [3, 4]), kappa_class(2, 1)]
    )
    @pytest.mark.parametrize(
        "curve_class",
        [
            lambda n: psi_class(n + 1, n + 1, 2, universal=True),
            lambda n: psi_class(n + 1, 1, universal=True),
            lambda n: section_class(n, 1),
            lambda n: kappa_class(n + 1, 1, universal=True),
        ],
        ids=["psi-point-squared", "psi-marking", "section", "kappa"],
    )
    def test_projection_formula(self, x, curve_class):
        y = curve_class(x.ambient.n)
        pushed = forgetful_pushforward(product(forgetful_pullback(x), y))
        assert is_zero(pushed - product(x, forgetful_pushforward(y)))

    def test_section_class(self):
        s = section_class(2, 1)
        assert s.ambient == Ambient(3, universal=True)
        assert len(s) == 1
        with pytest.raises(GraphException):
            section_class(2, 3)

    def test_cannot_forget_from_empty_stack(self):
        with pytest.raises(AmbientMismatchException):
            forgetful_pushforward(TautClass.fundamental(0))


class TestStabilization:
    def test_series_coefficients(self):
        series = StabilizationSeries(3)
        assert series.coefficients == (Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))
        assert series.phi(5) == 0

    def test_chain_graph(self):
        g = chain_graph(3, 2)
        assert g.num_vertices == 3
        assert g.valence(2) == 4
        assert g.valence(0) == 1

    def test_psi_pullback(self):
        tail = PrestableGraph.build([[2], [1, 3, 4]], [(0, 1)])
        assert stabilization_pullback_psi(4, 2) == psi_class(4, 2) - graph_class(tail)

    def test_pullback_of_fundamental_class(self):
        assert stabilization_pullback(TautClass.fundamental(4)) == TautClass.fundamental(4)

    def test_pullback_of_psi_class(self):
        assert stabilization_pullback(psi_class(4, 1)) == stabilization_pullback_psi(4, 1)

    def test_pullback_of_boundary_divisor_is_the_divisor(self):
        d = boundary_class(5, [1, 2], [3, 4, 5])
        assert stabilization_pullback(d) == d

    def test_rejects_unstable_input(self):
        with pytest.raises(GraphException):
            stabilization_pullback(boundary_class(4, [1], [2, 3, 4]))
        with pytest.raises(GraphException):
            stabilization_pullback(TautClass.fundamental(2))

    def test_pullback_to_three_points_vanishes(self):
        assert is_zero(stabilization_pullback_psi(3, 1))


class TestNormalize:
    def test_psi_on_three_valent_vertex(self):
        assert normalize(psi_class(3, 1)) == graph_class(PrestableGraph.build([[1], [2, 3]], [(0, 1)]))

    def test_normal_forms_are_fixed(self):
        for n, d in [(0, 2), (1, 1), (4, 1)]:
            for c in enumerate_normal_form_basis(n, d).classes:
                assert normalize(c) == c

    def test_output_is_in_normal_form(self):
        c = product(psi_class(4, 1), psi_class(4, 2)) + kappa_class(4, 2) + kappa_class(4, 1, power=2)
        assert all(is_normal_form(s) for s, _ in normalize(c).items())

    @pytest.mark.parametrize(
        "c,m",
        [
            (kappa_class(0, 1), 4),
            (kappa_class(3, 1), 2),
            (kappa_class(0, 2), 5),
            (kappa_class(2, 2), 3),
            (kappa_class(1, 2), 4),
            (kappa_class(4, 1, power=2), 1),
            (psi_class(4, 1) + kappa_class(4, 1), 1),
        ],
    )
    def test_normalization_survives_stable_pullback(self, c, m):
        assert is_stable_zero(forgetful_chart_pullback(normalize(c) - c, m))

    @pytest.mark.parametrize("n,i,fixed", [(4, 1, (3, 4)), (5, 1, (4, 5)), (5, 3, (5, 1)), (6, 2, (6, 4))])
    def test_choice_of_fixed_markings(self, n, i, fixed):
        assert is_zero(psi_to_boundary(n, i) - psi_to_boundary(n, i, fixed=fixed))
        assert is_stable_zero(psi_to_boundary(n, i) - psi_to_boundary(n, i, fixed=fixed))

    def test_fixed_markings_are_validated(self):
        for fixed in [(1, 2), (2, 2), (2, 7), (2, 3, 4)]:
            with pytest.raises(ValidationException):
                psi_to_boundary(4, 1, fixed=fixed)

    def test_psi_boundary_expression(self):
        assert psi_to_boundary(2, 1) == boundary_class(2, [1], [2])
        assert len(psi_to_boundary(5, 1)) == 4

    def test_rejects_universal_classes(self):
        with pytest.raises(AmbientMismatchException):
            normalize(psi_class(3, 1, universal=True))


class TestKappaToPreferred:
    def test_kappa_zero_is_a_scalar(self):
        assert kappa_to_preferred(5, 0) == TautClass.fundamental(5) * 3

    @pytest.mark.parametrize("n,a,m", [(1, 1, 3), (3, 1, 1), (4, 1, 1), (2, 2, 3), (0, 1, 4)])
    def test_survives_stable_pullback(self, n, a, m):
        difference = kappa_class(n, a) - kappa_to_preferred(n, a)
        assert is_stable_zero(forgetful_chart_pullback(difference, m))

    def test_rejects_negative_index(self):
        with pytest.raises(ValidationException):
            kappa_to_preferred(3, -1)
