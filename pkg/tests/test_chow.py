from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tango.chow import (P5, Q5, Ambient, ChernVector, ChowClass, ChowError, chern_from_hilbert, dual,
                        hrr_chi, lemma_enumeration, lemma_family, pullback, satisfies_lemma_relation, sym2,
                        twist, wedge2, whitney_sum)
from tango.qpoly import QPoly


def test_whitney_sum_of_lines():
    E = whitney_sum(ChernVector.line(P5, 1), ChernVector.line(P5, 2))
    assert E.rank == 2
    assert E.coordinates() == (3, 2)


def test_dual_flips_odd_classes():
    E = ChernVector.from_coordinates(P5, 2, [3, 5])
    assert dual(E).coordinates() == (-3, 5)
    assert dual(dual(E)) == E


def test_twist_of_line():
    assert twist(ChernVector.line(P5, 1), 2) == ChernVector.line(P5, 3)


@pytest.mark.parametrize("d", range(-3, 4))
def test_hrr_of_line_bundles_on_p5(d):
    chi = hrr_chi(P5, ChernVector.line(P5, d))
    for t in range(-d, 6):
        assert chi(t) == comb(t + d + 5, 5)
    assert chi == QPoly.binomial(5 + d, 5)


def test_hrr_on_quadric():
    chi = hrr_chi(Q5, ChernVector.trivial(Q5))
    assert chi(0) == 1
    for t in range(0, 5):
        assert chi(t) == comb(t + 6, 6) - comb(t + 4, 6)


def test_tangent_bundles():
    assert P5.tangent().coordinates()[:2] == (6, 15)
    # c_1(T_Q5) = 5, and chi(T) = dim Aut = 21 for Q5
    assert Q5.tangent().coordinates()[0] == 5
    assert hrr_chi(Q5, Q5.tangent())(0) == 21
    assert hrr_chi(P5, P5.tangent())(0) == 35


classes = st.tuples(st.integers(-6, 6), st.integers(-10, 10))


@given(classes)
@settings(max_examples=40, deadline=None)
def test_chern_from_hilbert_round_trip_p5(c):
    E = ChernVector.from_coordinates(P5, 2, list(c))
    assert chern_from_hilbert(hrr_chi(P5, E), P5, 2) == E


@given(st.integers(-4, 4), st.integers(-8, 8))
@settings(max_examples=40, deadline=None)
def test_chern_from_hilbert_round_trip_q5(c1, c2):
    E = ChernVector.from_coordinates(Q5, 2, [c1, c2])
    assert chern_from_hilbert(hrr_chi(Q5, E), Q5, 2) == E


def test_sym2_and_wedge2_of_split_bundle():
    a, b = ChernVector.line(P5, 1), ChernVector.line(P5, 3)
    E = whitney_sum(a, b)
    assert wedge2(E) == ChernVector.line(P5, 4)
    expected = whitney_sum(whitney_sum(ChernVector.line(P5, 2), ChernVector.line(P5, 4)), ChernVector.line(P5, 6))
    assert sym2(E) == expected


def test_pullback_by_degree_two_map():
    C1 = ChernVector.from_coordinates(Q5, 2, [1, 1])
    T = pullback(C1, P5, 2)
    assert T.rank == 2
    assert T.coordinates()[0] == 2


def test_chow_ring_of_quadric():
    h = ChowClass.from_coordinates(Q5, [0, 1])
    h3 = h * h * h
    # h^3 = 2 * (line class) in integer coordinates
    assert h3.coordinates()[3] == 2
    assert (h3 * h * h).degree() == 2
    assert not ChowClass.from_coordinates(Q5, [0, 0, 0, 1]).coeffs[3] == 1


def test_lemma_bound_one_is_empty():
    assert lemma_enumeration(bound=1) == []


def test_lemma_solutions_form_the_family():
    sols = lemma_enumeration(bound=20)
    assert sorted(s.a for s in sols) == lemma_family(20)
    assert all(satisfies_lemma_relation(s.a) for s in sols)
    assert not satisfies_lemma_relation((1, 1, 1))


def test_ambient_validation():
    with pytest.raises(ChowError):
        Ambient("Q", 4)
    with pytest.raises(ChowError):
        Ambient("X", 3)
    with pytest.raises(ChowError):
        ChernVector(P5, 1, [Fraction(2)])
