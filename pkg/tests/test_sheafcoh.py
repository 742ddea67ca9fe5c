from __future__ import annotations

from math import comb

import pytest

from tango.module import GradedMatrix, GradedModule, hilbert_polynomial
from tango.sheafcoh import CohomologyError, cohomology_table, render_table, sheaf_cohomology

from oracles import poly_ring


def binom(n, k):
    return comb(n, k) if n >= k >= 0 else 0


def bott_line(n, i, t):
    """h^i(O_{P^n}(t)), the classical formula."""
    if i == 0:
        return binom(t + n, n)
    if i == n:
        return binom(-t - 1, n)
    return 0


def test_line_bundles_on_p5(P5):
    O = GradedModule.free(P5, [0])
    for t in range(-9, 4):
        for i in range(6):
            assert sheaf_cohomology(O, i, t) == bott_line(5, i, t), (i, t)


def test_line_bundles_on_quadric(R):
    O = GradedModule.free(R, [0])
    for t in range(-8, 3):
        h0 = binom(t + 6, 6) - binom(t + 4, 6)
        h5 = binom(-t - 5 + 6, 6) - binom(-t - 5 + 4, 6)
        assert sheaf_cohomology(O, 0, t) == h0
        assert sheaf_cohomology(O, 5, t) == h5
        assert all(sheaf_cohomology(O, i, t) == 0 for i in (1, 2, 3, 4))


def test_hyperplane_section():
    # S / (x0) on P^3 is O of a plane: cohomology of O_{P^2}
    R = poly_ring("x0 x1 x2 x3")
    M = GradedModule(GradedMatrix(R, [0], [{0: R.var(0)}]))
    for t in range(-5, 3):
        assert sheaf_cohomology(M, 0, t) == bott_line(2, 0, t)
        assert sheaf_cohomology(M, 2, t) == bott_line(2, 2, t)
        assert sheaf_cohomology(M, 3, t) == 0


def test_finite_length_module_has_no_sheaf_cohomology():
    R = poly_ring("x y z")
    k = GradedModule(GradedMatrix(R, [0], [{0: R.var(i)} for i in range(3)]))
    tab = cohomology_table(k, -3, 3)
    assert tab.values == {}
    text = render_table(tab)
    assert set(text.replace("total:", "").split()) <= {".", "0", "0:", "-1:", "-2:", "-3:"}


def test_euler_characteristic_is_hilbert_polynomial(objects):
    C = objects.C
    tab = cohomology_table(C, -6, 2)
    hp = hilbert_polynomial(C)
    for t in range(-6, 3):
        assert tab.euler(t) == hp(t)


def test_serre_duality_for_cayley_bundle(objects):
    # C^dual = C(1) and omega = O(-5) on Q5, so h^i(C(t)) = h^{5-i}(C(-t-4))
    C = objects.C
    for t in range(-6, 3):
        for i in range(6):
            assert sheaf_cohomology(C, i, t) == sheaf_cohomology(C, 5 - i, -t - 4)


def test_totals_are_antidiagonal_sums(P5):
    O = GradedModule.free(P5, [0])
    tab = cohomology_table(O, -7, 1)
    for c, total in enumerate(tab.totals()):
        assert total == sum(tab.entry(i, tab.hi - i - c) for i in range(6))


def test_render_shape(P5):
    O = GradedModule.free(P5, [0])
    lines = render_table(cohomology_table(O, -2, 2)).splitlines()
    assert lines[0].lstrip().startswith("total:")
    assert len(lines) == 1 + 6
    # rows are labelled i - 6; the last one carries h^5(O(-3 - c)): h^5(O(-6)) = 1, h^5(O(-7)) = 6
    assert lines[-1].split() == ["-1:", ".", ".", ".", "1", "6"]


def test_empty_window_rejected(P5):
    with pytest.raises(CohomologyError):
        cohomology_table(GradedModule.free(P5, [0]), 2, 1)


def test_out_of_range_index_is_zero(P5):
    O = GradedModule.free(P5, [0])
    assert sheaf_cohomology(O, -1, 0) == 0
    assert sheaf_cohomology(O, 6, -10) == 0
