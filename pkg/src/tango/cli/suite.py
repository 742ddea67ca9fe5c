"""The verification suite: one check per claim in ``claims.toml``.

A check computes a JSON-compatible value shaped like the claim's
``expected`` table; the verdict passes when the two are equal.  Checks never
read the expected value except for parameters that fix *what* to compute
(a window, a bound), so expectations cannot leak into results.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised only on 3.10
    import tomli as tomllib

from .. import bbw, chow
from ..gb import saturate
from ..module import (GradedMatrix, determinant, dual_sheaf, free_resolution, hilbert_function,
                      hilbert_polynomial, minors, minors_ideal)
from ..qpoly import format_qpoly
from ..ring import format_polynomial, parse_polynomial
from ..sheafcoh import cohomology_table, render_table, sheaf_cohomology
from .objects import Objects, decomposition_hf

PROFILES = ("quick", "full")


@dataclass
class Verdict:
    claim: str
    ref: str
    expected: Any
    computed: Any
    passed: bool
    millis: int

    def to_dict(self) -> Dict[str, Any]:
        return {"claim": self.claim, "ref": self.ref, "expected": self.expected,
                "computed": self.computed, "pass": self.passed, "millis": self.millis}

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Verdict":
        return cls(d["claim"], d["ref"], d["expected"], d["computed"], d["pass"], d["millis"])


def load_claims(path=None) -> List[Dict[str, Any]]:
    if path is None:
        from importlib import resources
        data = resources.files("tango.data").joinpath("claims.toml").read_bytes()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    return tomllib.loads(data.decode("utf-8"))["claim"]


def normalise(x: Any) -> Any:
    """Canonical JSON form (tuples become lists, keys become strings)."""
    return json.loads(json.dumps(x, sort_keys=True))


class Context:
    def __init__(self, objects: Objects, window: Optional[Tuple[int, int]] = None):
        self.objects = objects
        self.window = window


# helpers ------------------------------------------------------------------------------------

def matrix_rows(A: GradedMatrix) -> List[List[str]]:
    return [[format_polynomial(A.cols[j].get(i, A.ring.zero())) for j in range(len(A.cols))]
            for i in range(len(A.tgt))]


def matrix_digest(A: GradedMatrix) -> str:
    text = "\n".join(";".join(row) for row in matrix_rows(A))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _entry_degrees(A: GradedMatrix) -> List[int]:
    return sorted({p.degree() for c in A.cols for p in c.values() if not p.is_zero()})


def _antisymmetric(A: GradedMatrix) -> bool:
    n = len(A.cols)
    if len(A.tgt) != n:
        return False
    zero = A.ring.zero()
    for i in range(n):
        if not A.cols[i].get(i, zero).is_zero():
            return False
        for j in range(n):
            if A.cols[j].get(i, zero) != A.cols[i].get(j, zero):
                return False
    return True


def sheaf_rank(hp) -> int:
    """Rank of a sheaf on Q_5 from its Hilbert polynomial (degree 5, ambient degree 2)."""
    if hp.degree() != 5:
        return 0
    return int(hp.coeffs[5] * 120 / 2)


def _key(i: int, t: int) -> str:
    return f"{i},{t}"


def _intermediate(M, lo: int, hi: int) -> Dict[str, int]:
    tab = cohomology_table(M, lo, hi)
    out = {}
    for t in range(lo, hi + 1):
        for i in range(1, tab.n):
            v = tab.entry(i, t)
            if v:
                out[_key(i, t)] = v
    return out


def _splits(pf, summands, kind: str, n: int) -> bool:
    return all(hilbert_function(pf.module, d) == decomposition_hf(kind, n, [tuple(s) for s in summands], d)
               for d in range(pf.degree_bound + 1))


def _degrees(counter: Dict[int, int]) -> Dict[str, int]:
    return {str(k): v for k, v in counter.items()}


# checks -------------------------------------------------------------------------------------

def check_fixture_digests(ctx: Context, exp) -> Dict[str, Any]:
    A, B = ctx.objects.A, ctx.objects.B
    a_deg, b_deg = _entry_degrees(A), _entry_degrees(B)
    return {
        "A_shape": [len(A.tgt), len(A.cols)], "A_entry_degree": a_deg[0] if len(a_deg) == 1 else a_deg,
        "A_sha256": matrix_digest(A),
        "B_shape": [len(B.tgt), len(B.cols)], "B_entry_degree": b_deg[0] if len(b_deg) == 1 else b_deg,
        "B_sha256": matrix_digest(B),
        "B_antisymmetric_zero_diagonal": _antisymmetric(B),
    }


def check_sat_wedge_A(ctx: Context, exp) -> Dict[str, Any]:
    A = ctx.objects.A
    out = {}
    for k in (1, 2, 3):
        out[f"sat_minors_{k}"] = "unit" if saturate(minors_ideal(k, A)).is_unit() else "proper"
    out["minors_4"] = "zero" if all(p.is_zero() for p in minors(4, A)) else "nonzero"
    return out


def check_det_B(ctx: Context, exp) -> Dict[str, Any]:
    B = ctx.objects.B
    d = determinant(B)
    want = parse_polynomial(B.ring, exp["det"])
    return {"det": exp["det"] if d == want else format_polynomial(d)}


def check_chi_T_hrr(ctx: Context, exp) -> Dict[str, Any]:
    T = chow.ChernVector.from_coordinates(chow.P5, 2, [2, 4])
    return {"chi": format_qpoly(chow.hrr_chi(chow.P5, T))}


def check_chi_sym2C(ctx: Context, exp) -> Dict[str, Any]:
    C = chow.ChernVector.from_coordinates(chow.Q5, 2, [-1, 1])
    return {"chi": format_qpoly(chow.hrr_chi(chow.Q5, chow.sym2(C)))}


def check_lemma(ctx: Context, exp) -> Dict[str, Any]:
    bound = exp["bound"]
    sols = chow.lemma_enumeration(5, bound)
    return {"bound": bound, "solutions": [list(s.a) for s in sols if s.a == s.b]
            + [["a != b", list(s.a), list(s.b)] for s in sols if s.a != s.b]}


def check_bbw(ctx: Context, exp) -> Dict[str, Any]:
    def pair(r):
        return "singular" if r.singular else [r.degree, r.dimension]

    shifted = bbw.sym2_cayley_weight(0) + bbw.RHO
    return {
        "dim_lambda2": bbw.weyl_dimension(bbw.L2),
        "C": {str(t): pair(bbw.bbw_cohomology(bbw.cayley_weight(t))) for t in (0, -4, 2)},
        "Sym2C_singular_shifted_weight": [shifted.a, shifted.b] if bbw.is_singular(shifted) else "regular",
        "Sym2C": {str(t): pair(bbw.bbw_cohomology(bbw.sym2_cayley_weight(t))) for t in (2, 1, -1, 0, 3)},
    }


def _pushforward_part(ctx, name, parity, summands, kind, n, of="O"):
    pf = ctx.objects.pushforward(name, parity, of)
    return pf, _splits(pf, summands, kind, n)


def check_q3(ctx: Context, exp) -> Dict[str, Any]:
    out = {}
    for part, parity in (("even", 0), ("odd", 1)):
        pf, ok = _pushforward_part(ctx, "f3", parity, exp[part]["splits_as"], "Q", 3)
        out[part] = {"generators": _degrees(pf.generator_degrees()),
                     "splits_as": exp[part]["splits_as"] if ok else "Hilbert function mismatch"}
    return out


def check_fstar(ctx: Context, exp) -> Dict[str, Any]:
    out = {}
    for part, parity in (("even", 0), ("odd", 1)):
        pf, ok = _pushforward_part(ctx, "f", parity, exp[part]["splits_as"], "Q", 5)
        out[part] = {"generators": _degrees(pf.generator_degrees()),
                     "splits_as": exp[part]["splits_as"] if ok else "Hilbert function mismatch"}
    return out


def check_pistar(ctx: Context, exp) -> Dict[str, Any]:
    out = {}
    for of in ("S", "O"):
        pf = ctx.objects.pushforward("pi", 0, of)
        out[of] = {"generators": _degrees(pf.generator_degrees()),
                   "relations": _degrees(pf.relation_degrees())}
    return out


def check_phistar(ctx: Context, exp) -> Dict[str, Any]:
    out = {}
    for key, name, kind, parity in (("P5_even", "phi", "P", 0), ("P5_odd", "phi", "P", 1),
                                    ("Q5_even", "phiQ", "Q", 0), ("Q5_odd", "phiQ", "Q", 1)):
        pf, ok = _pushforward_part(ctx, name, parity, exp[key], kind, 5)
        out[key] = exp[key] if ok else "Hilbert function mismatch"
    return out


def check_coh_H(ctx: Context, exp) -> Dict[str, Any]:
    lo, hi = exp["window"]
    return {"window": [lo, hi], "intermediate": _intermediate(ctx.objects.H, lo, hi)}


def check_ext_H(ctx: Context, exp) -> Dict[str, Any]:
    o = ctx.objects
    ext = o.extension
    lo, hi = exp["W_window"]
    W = o.W
    return {
        "ext1_dim": ext.ext_dim,
        "W_rank": sheaf_rank(hilbert_polynomial(W)),
        "W_intermediate": _intermediate(W, lo, hi),
        "W_window": [lo, hi],
        "W_hilbert_polynomial": format_qpoly(hilbert_polynomial(W)),
    }


def check_hoppe(ctx: Context, exp) -> Dict[str, Any]:
    o = ctx.objects
    return {"h0_H_m1": sheaf_cohomology(o.H, 0, -1),
            "h0_wedge2_H_m1": sheaf_cohomology(o.wedge2_Hm1, 0, 0)}


def check_chern_H(ctx: Context, exp) -> Dict[str, Any]:
    Hd = dual_sheaf(ctx.objects.H).twist(1)
    cv = chow.chern_from_hilbert(hilbert_polynomial(Hd), chow.Q5, 3)
    return {"chern": [int(x) for x in cv.coordinates()]}


def check_res_C1(ctx: Context, exp) -> Dict[str, Any]:
    steps = len(exp["ranks"])
    res = free_resolution(ctx.objects.C1, length_cap=steps - 1)
    return {"ranks": res.betti().ranks()[:steps]}


def check_chi_T_module(ctx: Context, exp) -> Dict[str, Any]:
    return {"chi": format_qpoly(hilbert_polynomial(ctx.objects.T))}


def betti_twists(M) -> Dict[str, Dict[str, int]]:
    b = free_resolution(M).betti()
    out: Dict[str, Dict[str, int]] = {}
    for (i, d), v in sorted(b.data.items()):
        out.setdefault(str(i), {})[str(-d)] = v
    return out


def check_betti_T(ctx: Context, exp) -> Dict[str, Any]:
    return {"betti": betti_twists(ctx.objects.T)}


def check_thm(ctx: Context, exp) -> Dict[str, Any]:
    T = ctx.objects.T
    t0 = exp["all_vanish_at"]
    tab = cohomology_table(T, -8, 5)
    values = {}
    for t in range(-13, 6):
        for i in range(1, 5):
            if tab.entry(i, t):
                values[_key(i, t)] = tab.entry(i, t)
    vanish = [t for t in range(-13, 6) if all(tab.entry(i, t) == 0 for i in range(6))]
    return {"values": values, "all_vanish_at": vanish[0] if len(vanish) == 1 else vanish}


def parse_rendered_table(text: str, hi: int, n: int = 5) -> Dict[Tuple[int, int], int]:
    """Entries (i, t) -> h^i of a rendered table whose last twist is ``hi``."""
    out = {}
    for line in text.strip().splitlines():
        label, _, rest = line.strip().partition(":")
        if label == "total":
            continue
        i = int(label) + n + 1
        for c, cell in enumerate(rest.split()):
            if cell != ".":
                out[(i, hi - i - c)] = int(cell)
    return out


def check_table(ctx: Context, exp) -> Dict[str, Any]:
    lo, hi = exp["window"]
    if ctx.window is None or tuple(ctx.window) == (lo, hi):
        text = render_table(cohomology_table(ctx.objects.T, lo, hi))
        return {"window": [lo, hi], "table": "\n" + text + "\n"}
    # another window: compare the cells shared with the printed table
    wlo, whi = ctx.window
    tab = cohomology_table(ctx.objects.T, wlo, whi)
    printed = parse_rendered_table(exp["table"], hi)
    covered_lo = max(lo - 5, wlo - 5)
    covered_hi = min(hi, whi)
    bad = [f"{i},{t}" for i in range(6) for t in range(covered_lo, covered_hi + 1)
           if tab.entry(i, t) != printed.get((i, t), 0)]
    return {"window": [lo, hi], "table": exp["table"] if not bad else {"mismatched cells": bad}}


def check_char2_sym2(ctx: Context, exp) -> Dict[str, Any]:
    o = ctx.objects
    gf2 = {i: sheaf_cohomology(o.Sym2C, i, 0) for i in range(6)}
    r = bbw.bbw_cohomology(bbw.sym2_cayley_weight(0))
    char0 = {i: r.h(i) for i in range(6)}
    diff = [[i, gf2[i]] for i in range(6) if gf2[i] != char0[i]]
    return {"discrepancy_at_0": diff, "h2_C2": sheaf_cohomology(o.C2, 2, 0)}


def check_coh_SC(ctx: Context, exp) -> Dict[str, Any]:
    tab = cohomology_table(ctx.objects.SC, -5, 1)
    values = {}
    for t in range(-5, 2):
        for i in range(1, tab.n):
            if tab.entry(i, t):
                values[_key(i, t)] = tab.entry(i, t)
    return {"values": values}


def leray_failures(o: Objects, lo: int, hi: int) -> List[str]:
    """Twists where h^i(T(2t)), h^i(T(2t+1)) disagree with the split pushforwards."""
    T, C, SC = o.T, o.C, o.SC

    def hC(i, t):
        return sheaf_cohomology(C, i, t)

    bad = []
    for t in range(lo, hi + 1):
        for i in range(6):
            even = hC(i, t + 1) + 14 * hC(i, t) + hC(i, t - 1)
            odd = 6 * hC(i, t + 1) + 6 * hC(i, t) + sheaf_cohomology(SC, i, t + 1)
            if sheaf_cohomology(T, i, 2 * t) != even:
                bad.append(f"even {i},{t}")
            if sheaf_cohomology(T, i, 2 * t + 1) != odd:
                bad.append(f"odd {i},{t}")
    return bad


def check_leray(ctx: Context, exp) -> Dict[str, Any]:
    lo, hi = exp["window"]
    return {"window": [lo, hi], "failures": leray_failures(ctx.objects, lo, hi)}


def check_monad(ctx: Context, exp) -> Dict[str, Any]:
    o = ctx.objects
    spec = o.monad_specs[0] if len(o.monad_specs) == 1 else None
    if spec is None:
        return {"assignments": len(o.monad_specs)}
    res = o.monad
    TM, T = o.TM, o.T
    same_table = all(sheaf_cohomology(TM, i, t) == sheaf_cohomology(T, i, t)
                     for i in range(6) for t in range(-13, 6))
    return {
        "left": sorted(spec.left), "middle": sorted(spec.middle),
        "beta_alpha_zero": res.beta_alpha_zero, "beta_surjective": res.beta_surjective,
        "alpha_injective": res.alpha_injective,
        "same_betti_as_T": betti_twists(TM) == betti_twists(T),
        "same_table_as_T": same_table,
    }


CHECKS: Dict[str, Callable[[Context, Any], Any]] = {
    "fixture-digests": check_fixture_digests,
    "sat-wedge-A": check_sat_wedge_A,
    "det-B": check_det_B,
    "chi-T-hrr": check_chi_T_hrr,
    "chi-Sym2C": check_chi_sym2C,
    "lemma-enumeration": check_lemma,
    "bbw-table": check_bbw,
    "q3-pushforward": check_q3,
    "fstar": check_fstar,
    "pistar-S": check_pistar,
    "phistar": check_phistar,
    "coh-H": check_coh_H,
    "ext-H": check_ext_H,
    "hoppe": check_hoppe,
    "chern-H": check_chern_H,
    "res-C1": check_res_C1,
    "chi-T-module": check_chi_T_module,
    "betti-T": check_betti_T,
    "thm-bott-cohomology": check_thm,
    "table-tango": check_table,
    "char2-sym2": check_char2_sym2,
    "coh-SC": check_coh_SC,
    "leray": check_leray,
    "monad": check_monad,
}


def _compare(expected, computed) -> bool:
    if isinstance(expected, dict) and "table" in expected and isinstance(computed, dict):
        e = dict(expected)
        c = dict(computed)
        et, ct = e.pop("table"), c.pop("table")
        if not isinstance(ct, str):
            return False
        return normalise(e) == normalise(c) and et.split() == ct.split()
    return normalise(expected) == normalise(computed)


def run_claim(claim: Dict[str, Any], ctx: Context) -> Verdict:
    start = time.perf_counter()
    expected = claim["expected"]
    try:
        computed = CHECKS[claim["id"]](ctx, expected)
        passed = _compare(expected, computed)
    except Exception as exc:  # a failing claim must not abort the suite
        computed = {"error": f"{type(exc).__name__}: {exc}"}
        passed = False
    millis = int(round((time.perf_counter() - start) * 1000))
    return Verdict(claim["id"], claim["ref"], normalise(expected), normalise(computed), passed, millis)


def select_claims(claims: Sequence[Dict[str, Any]], profile: str = "quick",
                  only: Optional[Sequence[str]] = None) -> List[Dict[str, Any]]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    known = {c["id"] for c in claims}
    if only:
        missing = [c for c in only if c not in known]
        if missing:
            raise KeyError(f"unknown claim id(s): {', '.join(missing)}")
        return [c for c in claims if c["id"] in only]
    return [c for c in claims if profile == "full" or c.get("profile", "full") == "quick"]


def run_verification_suite(profile: str = "quick", only: Optional[Sequence[str]] = None,
                           window: Optional[Tuple[int, int]] = None, threads: int = 1,
                           objects: Optional[Objects] = None, claims_path=None) -> List[Verdict]:
    """Run the selected claims; the result is ordered by claim id."""
    claims = select_claims(load_claims(claims_path), profile, only)
    ctx = Context(objects if objects is not None else Objects(), window)
    unknown = [c["id"] for c in claims if c["id"] not in CHECKS]
    if unknown:
        raise KeyError(f"no check implemented for {', '.join(unknown)}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(lambda c: run_claim(c, ctx), claims))
    else:
        verdicts = [run_claim(c, ctx) for c in claims]
    return sorted(verdicts, key=lambda v: v.claim)
