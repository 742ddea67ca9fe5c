from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tango.bbw import (BBWError, L1, L2, RHO, Weight, all_reduced_words_agree, apply_word, bbw_cohomology,
                       cayley_weight, chi_crosscheck, is_singular, reflect, sym2_cayley_weight, weyl_dimension,
                       weyl_group)
from tango.module import hilbert_polynomial

weights = st.builds(Weight, st.integers(-12, 12), st.integers(-12, 12))


def test_weyl_group_has_twelve_elements():
    words = weyl_group()
    assert len(words) == 12
    images = {apply_word(w, RHO) for w in words}
    assert len(images) == 12


def test_reflections_are_involutions():
    for w in (L1, L2, RHO, Weight(3, -2)):
        for i in (1, 2):
            assert reflect(reflect(w, i), i) == w


def test_fundamental_dimensions():
    assert weyl_dimension(Weight(0, 0)) == 1
    assert weyl_dimension(L1) == 7
    assert weyl_dimension(L2) == 14
    assert weyl_dimension(L1 * 2) == 27
    with pytest.raises(BBWError):
        weyl_dimension(Weight(-1, 0))


def test_line_bundles_on_quadric():
    O = Weight(0, 0)
    for t in range(-10, 4):
        r = bbw_cohomology(O, t)
        if t >= 0:
            assert (r.degree, r.dimension) == (0, comb(t + 6, 6) - comb(t + 4, 6))
        elif t <= -5:
            s = -t - 5
            assert (r.degree, r.dimension) == (5, comb(s + 6, 6) - comb(s + 4, 6))
        else:
            assert r.singular


def test_cayley_bundle_against_module_cohomology(objects):
    from tango.sheafcoh import sheaf_cohomology
    for t in range(-6, 3):
        r = bbw_cohomology(cayley_weight(t))
        for i in range(6):
            assert sheaf_cohomology(objects.C, i, t) == r.h(i), (i, t)


def test_bbw_euler_characteristic_matches_module(objects):
    hp = hilbert_polynomial(objects.C)
    for t in range(-8, 5):
        assert chi_crosscheck(cayley_weight(0), t) == hp(t)


@given(weights)
@settings(max_examples=200, deadline=None)
def test_regular_weights_have_one_degree(w):
    shifted = w + RHO
    if is_singular(shifted):
        assert bbw_cohomology(w).singular
    else:
        r = bbw_cohomology(w)
        assert r.dimension > 0
        assert sum(1 for i in range(7) if r.h(i)) == 1
        assert all_reduced_words_agree(shifted)


@given(weights)
@settings(max_examples=100, deadline=None)
def test_weyl_dimension_is_dual_invariant(w):
    # every G2 representation is self-dual; -w0 = identity
    d = w + RHO
    if d.a > 0 and d.b > 0:
        assert weyl_dimension(w) == weyl_dimension(apply_word(max(weyl_group(), key=len), w) * -1)


def test_sym2_weight_is_twice_cayley():
    assert sym2_cayley_weight(0) == cayley_weight(0) * 2
