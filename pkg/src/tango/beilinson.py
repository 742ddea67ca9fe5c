"""Twisted cotangent bundles on P^5, exterior-algebra maps between them, monads.

Let f_0..f_5 be a basis of the free module in the Koszul complex on
x_0..x_5 with differential d(f_I) = sum_{k in I} x_k f_{I-k} (characteristic
2, so no signs).  We use

    Omega^i(i) = ker(d : wedge^i (x) S -> wedge^{i-1} (x) S(1)),   i >= 1,

which by exactness equals the image of d on wedge^{i+1} (x) S(-1).  Its
module of sections is therefore generated by g_I = d(f_I), |I| = i+1, in
degree 1, with relations d(f_K), |K| = i+2; and Omega^0 = O = S.

An exterior monomial e_J acts by contraction iota_J(f_I) = f_{I-J} (zero
unless J is contained in I).  Contractions commute with d, so iota_J sends
g_I to g_{I-J}: Hom(Omega^i(i), Omega^j(j)) = wedge^{i-j} V acts by constant
matrices on generators, except that landing in Omega^0 = S gives
g_I -> x_k where I - J = {k}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from . import engine
from .gb import column_to_vec, ring_layout, vec_to_column
from .module import (GradedMatrix, GradedModule, ModuleError, hilbert_polynomial, module_map_kernel,
                     prune)
from .qpoly import QPoly
from .ring import ExteriorAlgebra, ExteriorElement, GradedRing

N_VARS = 6


class BeilinsonError(ValueError):
    pass


def default_ring() -> GradedRing:
    return GradedRing([f"x{i}" for i in range(N_VARS)], 2, name="P5")


def _subsets(k: int) -> List[int]:
    """Bitmasks of k-subsets of {0..5}, in lexicographic order of the subsets."""
    return [sum(1 << i for i in c) for c in combinations(range(N_VARS), k)]


def _koszul_column(ring: GradedRing, mask: int, index: Dict[int, int]) -> Dict[int, object]:
    col = {}
    for k in range(N_VARS):
        if mask >> k & 1:
            col[index[mask ^ (1 << k)]] = ring.var(k)
    return col


def omega_module(i: int, ring: Optional[GradedRing] = None) -> GradedModule:
    """Module of sections of Omega^i(i) on P^5 (rank binom(5, i))."""
    if not 0 <= i <= 5:
        raise BeilinsonError(f"Omega^{i} is zero or undefined on P^5")
    ring = ring or default_ring()
    if i == 0:
        return GradedModule.free(ring, [0])
    gens = _subsets(i + 1)
    index = {m: k for k, m in enumerate(gens)}
    rels = [_koszul_column(ring, m, index) for m in _subsets(i + 2)]
    return GradedModule(GradedMatrix(ring, [1] * len(gens), rels, [2] * len(rels)), name=f"Omega^{i}({i})")


def exterior_to_map(x: ExteriorElement, i: int, j: int, ring: Optional[GradedRing] = None) -> GradedMatrix:
    """The map Omega^i(i) -> Omega^j(j) given by contraction with x in wedge^{i-j} V."""
    ring = ring or default_ring()
    if not (0 <= j <= i <= 5):
        raise BeilinsonError(f"no contraction map Omega^{i}({i}) -> Omega^{j}({j})")
    if not x.is_zero() and x.degrees() != {i - j}:
        raise BeilinsonError(f"element {x} does not have degree {i - j}")
    src_gens = _subsets(i + 1) if i >= 1 else [0]
    if j == 0:
        tgt_degrees = [0]
    else:
        tgt_gens = _subsets(j + 1)
        tgt_index = {m: k for k, m in enumerate(tgt_gens)}
        tgt_degrees = [1] * len(tgt_gens)
    cols = []
    for I in src_gens:
        col: Dict[int, object] = {}
        for J in x.monomials:
            if i == 0:
                # the identity-like case Omega^0 -> Omega^0 (x a scalar)
                if J == 0:
                    col[0] = col.get(0, ring.zero()) + ring.one()
                continue
            if J & ~I:
                continue
            rest = I ^ J
            if j == 0:
                k = rest.bit_length() - 1
                col[0] = col.get(0, ring.zero()) + ring.var(k)
            else:
                r = tgt_index[rest]
                col[r] = col.get(r, ring.zero()) + ring.one()
        cols.append({r: p for r, p in col.items() if not p.is_zero()})
    src_degrees = [1] * len(src_gens) if i >= 1 else [0]
    return GradedMatrix(ring, tgt_degrees, cols, src_degrees)


def _block_matrix(ring: GradedRing, blocks: Sequence[Sequence[GradedMatrix]], tgt_sizes, src_sizes,
                  tgt_degrees, src_degrees) -> GradedMatrix:
    cols: List[Dict[int, object]] = []
    row_off = [sum(tgt_sizes[:r]) for r in range(len(tgt_sizes))]
    for c, width in enumerate(src_sizes):
        for jj in range(width):
            col: Dict[int, object] = {}
            for r in range(len(tgt_sizes)):
                for ii, p in blocks[r][c].cols[jj].items():
                    col[row_off[r] + ii] = p
            cols.append(col)
    return GradedMatrix(ring, tgt_degrees, cols, src_degrees)


@dataclass
class MonadSpec:
    """left --alpha--> middle --beta--> right, summands given by Omega indices.

    ``alpha[r][c]`` maps left summand c to middle summand r, ``beta[r][c]``
    maps middle summand c to right summand r.  Every right summand is O.
    """

    left: List[int]
    middle: List[int]
    right: List[int]
    alpha: List[List[ExteriorElement]]
    beta: List[List[ExteriorElement]]
    diagnostics: List[str] = field(default_factory=list)


def _degree(x: ExteriorElement) -> Optional[int]:
    return None if x.is_zero() else x.degree()


def assign_summands(alpha: List[List[ExteriorElement]], beta: List[List[ExteriorElement]],
                    right_index: int = 0) -> List[MonadSpec]:
    """All summand assignments compatible with degrees and with beta * alpha = 0.

    beta's columns are placed by their entry degrees (target Omega^0); for
    each ordering of alpha's rows against beta's columns, alpha's columns are
    placed by degree.  Columns whose forced index exceeds 5 would come from
    a zero sheaf; they are dropped with a diagnostic.
    """
    mid: List[int] = []
    for c in range(len(beta[0])):
        degs = {_degree(beta[r][c]) for r in range(len(beta))} - {None}
        if len(degs) != 1:
            raise BeilinsonError(f"beta column {c} is not homogeneous")
        mid.append(degs.pop() + right_index)
    out = []
    for perm in permutations(range(len(alpha))):
        # alpha row perm[k] is paired with beta column k
        rows = [alpha[perm[k]] for k in range(len(alpha))]
        left: List[Optional[int]] = []
        ok = True
        for c in range(len(rows[0])):
            idx = {(_degree(rows[k][c]) + mid[k]) for k in range(len(rows)) if _degree(rows[k][c]) is not None}
            if len(idx) > 1:
                ok = False
                break
            left.append(idx.pop() if idx else None)
        if not ok:
            continue
        diags = []
        keep = []
        for c, a in enumerate(left):
            if a is None:
                diags.append(f"alpha column {c} is zero; dropped")
            elif a > 5:
                diags.append(f"alpha column {c} would start at Omega^{a}({a}) = 0; dropped")
            else:
                keep.append(c)
        A = [[rows[k][c] for c in keep] for k in range(len(rows))]
        # composite beta * alpha in the exterior algebra
        zero = True
        for r in range(len(beta)):
            for c in range(len(keep)):
                acc = beta[r][0].algebra.zero()
                for k in range(len(rows)):
                    acc = acc + beta[r][k] * A[k][c]
                if not acc.is_zero():
                    zero = False
        if not zero:
            continue
        out.append(MonadSpec([left[c] for c in keep], mid, [right_index] * len(beta), A,
                             [list(r) for r in beta], diags))
    return out


@dataclass
class MonadResult:
    cohomology: GradedModule
    beta_alpha_zero: bool
    beta_surjective: bool
    alpha_injective: bool


def _sum_module(ring, indices: Sequence[int]) -> Tuple[GradedModule, List[int]]:
    mods = [omega_module(i, ring) for i in indices]
    out = mods[0]
    for m in mods[1:]:
        out = out.direct_sum(m)
    return out, [m.ngens for m in mods]


def _assemble(ring, spec_rows, tgt_idx, src_idx, tgt_mod, src_mod, tgt_sizes, src_sizes) -> GradedMatrix:
    blocks = [[exterior_to_map(spec_rows[r][c], src_idx[c], tgt_idx[r], ring) for c in range(len(src_idx))]
              for r in range(len(tgt_idx))]
    return _block_matrix(ring, blocks, tgt_sizes, src_sizes, tgt_mod.degrees, src_mod.degrees)


def subquotient(ring: GradedRing, ambient_degrees: Sequence[int], gens: GradedMatrix,
                rels: Sequence[Dict[int, object]]) -> GradedModule:
    """<gens> / <rels> inside a free module, assuming <rels> lies in <gens>."""
    tl = ring_layout(ring, ambient_degrees)
    sl = ring_layout(ring, gens.src)
    images = [column_to_vec(tl, c) for c in gens.cols]
    modulo = [column_to_vec(tl, c) for c in rels]
    found, _ = engine.kernel(sl, tl, images, modulo=[v for v in modulo if v], known=[])
    cols = [vec_to_column(sl, ring, v) for v in found]
    return GradedModule(GradedMatrix(ring, gens.src, cols))


def monad_cohomology(spec: MonadSpec, ring: Optional[GradedRing] = None) -> MonadResult:
    """ker(beta) / im(alpha) for the monad described by ``spec``."""
    ring = ring or default_ring()
    L, lsz = _sum_module(ring, spec.left)
    M, msz = _sum_module(ring, spec.middle)
    Rm, rsz = _sum_module(ring, spec.right)
    alpha = _assemble(ring, spec.alpha, spec.middle, spec.left, M, L, msz, lsz)
    beta = _assemble(ring, spec.beta, spec.right, spec.middle, Rm, M, rsz, msz)
    composite_zero = (beta * alpha).is_zero()
    if not composite_zero:
        raise BeilinsonError("monad condition fails: beta * alpha is nonzero")
    K = module_map_kernel(beta, Rm)
    rel_mid = [c for c in M.relations.cols]
    H = subquotient(ring, M.degrees, K, list(alpha.cols) + rel_mid)
    # sheaf-level checks via Hilbert polynomials
    coker_beta = GradedModule(GradedMatrix(ring, Rm.degrees, list(Rm.relations.cols) + list(beta.cols)))
    surj = hilbert_polynomial(coker_beta) == QPoly()
    im_alpha = subquotient(ring, M.degrees, alpha, rel_mid)
    inj = hilbert_polynomial(im_alpha) == hilbert_polynomial(L)
    return MonadResult(prune(H), composite_zero, surj, inj)
