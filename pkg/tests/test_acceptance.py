"""The seventeen acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (also collected in
the terminal summary).  Claims with literal expected values are evaluated
through the verification suite so the CLI and the tests share one code path;
the remaining checks are direct computations.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from tango import bbw
from tango.chow import P5, ChernVector, hrr_chi
from tango.cli.suite import run_verification_suite
from tango.module import (GradedMatrix, GradedModule, compose_is_zero, determinant, free_resolution,
                          hilbert_polynomial, minors_ideal)
from tango.qpoly import QPoly
from tango.sheafcoh import cohomology_table, sheaf_cohomology

from oracles import ideal_dim_oracle


def claims(objects, *ids):
    """Run the named claims; return {id: Verdict}."""
    return {v.claim: v for v in run_verification_suite("full", only=list(ids), objects=objects)}


def failing(verdicts):
    return [f"{k}: computed {v.computed}" for k, v in verdicts.items() if not v.passed]


def conclude(criterion, n, problems, detail=""):
    ok = not problems
    criterion(n, ok, detail if ok else "; ".join(problems)[:300])
    assert ok, problems


def test_criterion_01_matrix_certificates(objects, criterion):
    start = time.perf_counter()
    vs = claims(objects, "sat-wedge-A", "fixture-digests")
    elapsed = time.perf_counter() - start
    problems = failing(vs)
    if elapsed >= 120:
        problems.append(f"took {elapsed:.0f} s")
    conclude(criterion, 1, problems, f"{elapsed:.1f} s")


def test_criterion_02_spinor_determinant(objects, criterion, scenario):
    P6 = scenario.rings["P6"]
    start = time.perf_counter()
    det = determinant(objects.B)
    elapsed = time.perf_counter() - start
    q = P6.parse("z0^2 + z1*z2 + z3*z4 + z5*z6")
    problems = [] if det == q ** 4 else [f"det B = {det}"]
    problems += failing(claims(objects, "det-B"))
    if elapsed >= 1:
        problems.append(f"took {elapsed:.2f} s")
    conclude(criterion, 2, problems, f"{elapsed * 1000:.0f} ms")


def test_criterion_03_euler_characteristic(objects, criterion):
    F = Fraction
    expected = QPoly([-14, F(-51, 10), F(11, 3), F(25, 12), F(1, 3), F(1, 60)])
    chi = hrr_chi(P5, ChernVector.from_coordinates(P5, 2, [2, 4]))
    problems = []
    if chi != expected:
        problems.append(f"HRR gives {chi.coeffs}")
    if hilbert_polynomial(objects.T) != expected:
        problems.append("Hilbert polynomial of T differs")
    problems += failing(claims(objects, "chi-T-hrr", "chi-T-module"))
    conclude(criterion, 3, problems)


def test_criterion_04_cohomology_of_T(objects, criterion):
    T = objects.T
    stated = {(1, -2): 1, (1, -1): 7, (1, 0): 14, (1, 1): 13, (1, 2): 1, (2, -3): 1}
    problems = []
    for (i, t), v in stated.items():
        if sheaf_cohomology(T, i, t) != v:
            problems.append(f"h^{i}(T({t})) = {sheaf_cohomology(T, i, t)}")
        # Serre-dual mirror: h^{5-i}(T(-t-8))
        if sheaf_cohomology(T, 5 - i, -t - 8) != v:
            problems.append(f"h^{5 - i}(T({-t - 8})) = {sheaf_cohomology(T, 5 - i, -t - 8)}")
    if any(sheaf_cohomology(T, i, -4) for i in range(6)):
        problems.append("T(-4) has cohomology")
    problems += failing(claims(objects, "thm-bott-cohomology"))
    conclude(criterion, 4, problems)


def test_criterion_05_cohomology_table(objects, criterion):
    vs = claims(objects, "table-tango")
    tab = cohomology_table(objects.T, -8, 5)
    problems = failing(vs)
    if tab.totals() != [573, 260, 92, 27, 14, 7, 2, 2, 7, 14, 27, 92, 260, 573]:
        problems.append(f"totals {tab.totals()}")
    conclude(criterion, 5, problems)


def test_criterion_06_resolution_of_T(objects, criterion):
    start = time.perf_counter()
    betti = free_resolution(objects.T).betti()
    elapsed = time.perf_counter() - start
    # generator degrees d of step i correspond to twists -d
    expected = {(0, 2): 14, (0, 3): 7, (1, 4): 76, (2, 5): 98, (3, 6): 49, (4, 7): 7, (4, 8): 1}
    problems = [] if betti == expected else [f"betti {betti.data}"]
    problems += failing(claims(objects, "betti-T"))
    if elapsed >= 900:
        problems.append(f"took {elapsed:.0f} s")
    conclude(criterion, 6, problems)


def test_criterion_07_resolution_of_C1(objects, criterion):
    ranks = free_resolution(objects.C1, length_cap=6).betti().ranks()
    problems = [] if ranks[:4] == [14, 34, 49, 55] and ranks[4:6] == [56, 56] else [f"ranks {ranks}"]
    problems += failing(claims(objects, "res-C1"))
    conclude(criterion, 7, problems, f"ranks {ranks}")


def test_criterion_08_H_and_the_extension(objects, criterion):
    H = objects.H
    problems = []
    for t in range(-4, 5):
        for i in range(1, 5):
            v = sheaf_cohomology(H, i, t)
            if v != (1 if (i, t) == (1, -1) else 0):
                problems.append(f"h^{i}(H({t})) = {v}")
    if objects.extension.ext_dim != 1:
        problems.append(f"dim Ext^1 = {objects.extension.ext_dim}")
    W, S = objects.W, objects.S
    if any(sheaf_cohomology(W, i, t) for i in range(1, 5) for t in range(-8, 6)):
        problems.append("W has intermediate cohomology")
    if hilbert_polynomial(W) != hilbert_polynomial(S):
        problems.append("HP(W) != HP(S)")
    problems += failing(claims(objects, "coh-H", "ext-H"))
    conclude(criterion, 8, problems)


def test_criterion_09_hoppe(objects, criterion):
    problems = []
    if sheaf_cohomology(objects.H, 0, -1):
        problems.append("h^0(H(-1)) != 0")
    problems += failing(claims(objects, "hoppe"))
    conclude(criterion, 9, problems)


def test_criterion_10_pushforwards(objects, criterion):
    vs = claims(objects, "fstar", "pistar-S", "phistar", "q3-pushforward")
    problems = failing(vs)
    even = objects.pushforward("f", 0).generator_degrees()
    odd = objects.pushforward("f", 1).generator_degrees()
    if even != {0: 1, 1: 14, 2: 1}:
        problems.append(f"f_* O generators {even}")
    if odd != {0: 6, 1: 14}:
        problems.append(f"f_* O(1) generators {odd}")
    conclude(criterion, 10, problems)


def test_criterion_11_borel_bott_weil(objects, criterion):
    problems = []
    if bbw.weyl_dimension(bbw.L2) != 14:
        problems.append("dim V(l2) != 14")
    C = bbw.cayley_weight(0)
    for t, pair in ((0, (1, 1)), (-4, (4, 1)), (2, (0, 14))):
        r = bbw.bbw_cohomology(C, t)
        if (r.degree, r.dimension) != pair:
            problems.append(f"C({t}): {(r.degree, r.dimension)}")
    if not bbw.is_singular(bbw.sym2_cayley_weight(0) + bbw.RHO):
        problems.append("Sym^2 C shifted weight is regular")
    problems += failing(claims(objects, "bbw-table", "chi-Sym2C"))
    conclude(criterion, 11, problems)


def test_criterion_12_characteristic_two(objects, criterion):
    gf2 = {i: sheaf_cohomology(objects.Sym2C, i, 0) for i in range(6)}
    char0 = bbw.bbw_cohomology(bbw.sym2_cayley_weight(0))
    diff = {(i, gf2[i]) for i in range(6) if gf2[i] != char0.h(i)}
    problems = [] if diff == {(1, 1), (2, 1)} else [f"discrepancy {sorted(diff)}"]
    if sheaf_cohomology(objects.C2, 2, 0) != 1:
        problems.append("h^2(C^[2]) != 1")
    problems += failing(claims(objects, "char2-sym2"))
    conclude(criterion, 12, problems)


def test_criterion_13_spinor_tensor_cayley(objects, criterion):
    # the six printed values; the computation disagrees (see README)
    printed = {(1, 0): 1, (1, 1): 6, (2, -1): 1, (3, -2): 1, (4, -4): 6, (4, -5): 1}
    SC = objects.SC
    computed = {(i, t): sheaf_cohomology(SC, i, t) for i in range(1, 5) for t in range(-5, 2)}
    computed = {k: v for k, v in computed.items() if v}
    problems = [] if computed == printed else [f"computed {sorted(computed.items())}"]
    problems += failing(claims(objects, "coh-SC"))
    conclude(criterion, 13, problems)


def test_criterion_14_leray(objects, criterion):
    problems = failing(claims(objects, "leray"))
    conclude(criterion, 14, problems)


def test_criterion_15_lemma(objects, criterion):
    problems = failing(claims(objects, "lemma-enumeration", "chern-H"))
    conclude(criterion, 15, problems)


def test_criterion_16_monad(objects, criterion):
    problems = failing(claims(objects, "monad"))
    conclude(criterion, 16, problems)


def _check_resolution(M, cap=None):
    res = free_resolution(M, length_cap=cap)
    bad = []
    for k in range(1, len(res.maps)):
        if not compose_is_zero(res.differential(k), res.differential(k + 1)):
            bad.append(f"d{k} d{k + 1} != 0")
    for A in res.maps:
        if any(p.degree() == 0 for c in A.cols for p in c.values()):
            bad.append("unit entry in a differential")
    return res, bad


def test_criterion_17_property_suites(objects, criterion):
    problems = []
    # Groebner dimensions against brute-force linear algebra, degrees <= 8
    for k in (1, 2, 3):
        I = minors_ideal(k, objects.A)
        for d in range(2 * k, 9):
            if I.dim(d) != ideal_dim_oracle(objects.R, I.gens, d):
                problems.append(f"minors_{k} degree {d}")
    # resolutions: complexes, minimal, and independent of the order of the relations
    for name, M, cap in (("T", objects.T, None), ("C1", objects.C1, 6), ("H", objects.H, 4)):
        res, bad = _check_resolution(M, cap)
        problems += [f"{name}: {b}" for b in bad]
        cols = list(M.relations.cols)
        src = list(M.relations.src)
        order = list(range(len(cols)))
        random.Random(7).shuffle(order)
        shuffled = GradedModule(GradedMatrix(M.ring, M.degrees, [cols[j] for j in order], [src[j] for j in order]))
        if free_resolution(shuffled, length_cap=cap).betti() != res.betti():
            problems.append(f"{name}: Betti table depends on the relation order")
    # Euler characteristic columns of every cohomology table
    for name in ("T", "C", "H", "S", "W"):
        M = objects.get(name)
        hp = hilbert_polynomial(M)
        tab = cohomology_table(M, -8, 5)
        for t in range(-8, 6):
            if tab.euler(t) != hp(t):
                problems.append(f"chi({name}({t}))")
    # Hilbert function by linear algebra versus via the Groebner basis
    for name in ("T", "C1", "H"):
        M = objects.get(name)
        for d in range(-2, 9):
            if M.hilbert_function(d) != M.hilbert_function_la(d):
                problems.append(f"HF {name} at {d}")
    # determinism: a re-run gives identical verdicts
    ids = ["det-B", "chi-T-hrr", "bbw-table", "lemma-enumeration"]
    a = [v.to_dict() | {"millis": 0} for v in run_verification_suite("quick", only=ids, objects=objects)]
    b = [v.to_dict() | {"millis": 0} for v in run_verification_suite("quick", only=ids, objects=objects)]
    if a != b:
        problems.append("verdicts differ between runs")
    conclude(criterion, 17, problems)
