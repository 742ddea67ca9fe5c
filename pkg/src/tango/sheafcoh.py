"""Sheaf cohomology of coherent sheaves on P^n via graded local duality.

For a module M over S = k[x_0..x_n] presenting the sheaf F,

    h^i(F(t)) = dim Ext^{n-i}_S(M, S)_{-t-n-1}            (i >= 1)
    h^0(F(t)) = dim M_t - dim Ext^{n+1}_{-t-n-1} + dim Ext^n_{-t-n-1}

(the last line is the four-term sequence 0 -> H^0_m M -> M -> Gamma_* F ->
H^1_m M -> 0 read through local duality).  Ext dimensions are obtained from
the dualised minimal resolution: dim Ext^j_e = dim F_j^*_e - rank d_{j+1}^T -
rank d_j^T in degree e, the ranks being Hilbert functions of image
submodules computed with Groebner bases.

Sheaves on the quadric are handled by restriction of scalars to the ambient
polynomial ring; the top row (i = n) then vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

from .gb import SubmoduleOfFree
from .module import GradedModule, Resolution, free_resolution, restrict_scalars


class CohomologyError(ValueError):
    pass


def _free_dim(n: int, degrees, e: int) -> int:
    """dim of (+)_k S(-degrees[k]) in degree e, S with n+1 variables."""
    return sum(comb(e - d + n, n) for d in degrees if e - d >= 0)


class LocalDuality:
    """Cached Ext-dimension oracle for one module."""

    def __init__(self, M: GradedModule, resolution: Optional[Resolution] = None):
        self.original = M
        self.quadric = M.ring.relation is not None
        self.module = restrict_scalars(M)
        ring = self.module.ring
        if ring.characteristic != 2:
            raise CohomologyError("cohomology is implemented over GF(2) only")
        self.ring = ring
        self.n = ring.nvars - 1
        self.resolution = resolution if resolution is not None else free_resolution(self.module)
        if self.resolution.truncated:
            raise CohomologyError("resolution was truncated")
        self.free = self.resolution.free_degrees
        self._images: Dict[int, Optional[SubmoduleOfFree]] = {}
        self._ext: Dict[Tuple[int, int], int] = {}

    def _dual_image(self, j: int) -> Optional[SubmoduleOfFree]:
        """Image of d_j^T : F_{j-1}^* -> F_j^* (None when zero)."""
        if j not in self._images:
            if j < 1 or j >= len(self.free):
                self._images[j] = None
            else:
                dT = self.resolution.differential(j).transpose()
                self._images[j] = SubmoduleOfFree(self.ring, dT.tgt, dT.cols)
        return self._images[j]

    def ext_dim(self, j: int, e: int) -> int:
        """dim_k Ext^j_S(M, S)_e."""
        key = (j, e)
        if key not in self._ext:
            if j < 0 or j >= len(self.free):
                val = 0
            else:
                dual_degrees = [-d for d in self.free[j]]
                total = _free_dim(self.n, dual_degrees, e)
                nxt = self._dual_image(j + 1)
                cur = self._dual_image(j)
                val = total - (nxt.dim(e) if nxt else 0) - (cur.dim(e) if cur else 0)
            self._ext[key] = val
        return self._ext[key]

    def h(self, i: int, t: int) -> int:
        n = self.n
        e = -t - n - 1
        if i == 0:
            return self.module.hilbert_function(t) - self.ext_dim(n + 1, e) + self.ext_dim(n, e)
        return self.ext_dim(n - i, e)


def _oracle(M: GradedModule) -> LocalDuality:
    """The local-duality data of M, cached on the module object itself."""
    ld = getattr(M, "_local_duality", None)
    if ld is None:
        ld = LocalDuality(M)
        M._local_duality = ld
    return ld


def sheaf_dimension(M: GradedModule) -> int:
    """Dimension of the ambient projective space of M's sheaf (5 for Q_5)."""
    n = M.ring.nvars - 1
    return n - 1 if M.ring.relation is not None else n


def sheaf_cohomology(M: GradedModule, i: int, t: int) -> int:
    """h^i(F(t)) for the sheaf F presented by M; 0 outside the valid range."""
    ld = _oracle(M)
    if i < 0 or i > ld.n:
        return 0
    return ld.h(i, t)


@dataclass
class CohTable:
    """h^i(F(t)) for 0 <= i <= n and lo <= t <= hi."""

    n: int
    lo: int
    hi: int
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def entry(self, i: int, t: int) -> int:
        return self.values.get((i, t), 0)

    def twists(self) -> range:
        return range(self.lo, self.hi + 1)

    def euler(self, t: int) -> int:
        return sum((-1) ** i * self.entry(i, t) for i in range(self.n + 1))

    def totals(self) -> List[int]:
        """Column sums of the rendered grid (one antidiagonal per twist)."""
        ncols = self.hi - self.lo + 1
        return [sum(self.entry(i, self.hi - i - c) for i in range(self.n + 1)) for c in range(ncols)]


def cohomology_table(M: GradedModule, lo: int, hi: int, rows: Optional[int] = None) -> CohTable:
    """Fill h^i(F(t)) for every twist the rendered grid touches.

    The renderer shows entry h^i(F(hi - i - c)); to fill all of its cells we
    compute twists down to lo - n.
    """
    if lo > hi:
        raise CohomologyError("empty window")
    ld = _oracle(M)
    n = sheaf_dimension(M) if rows is None else rows
    if ld.quadric:
        # the row i = n+1 of the ambient space must vanish
        for t in range(lo - n, hi + 1):
            if ld.h(n + 1, t):
                raise CohomologyError("top ambient cohomology of a quadric sheaf is nonzero")
    tab = CohTable(n, lo, hi)
    for t in range(lo - n, hi + 1):
        for i in range(n + 1):
            v = ld.h(i, t)
            if v:
                tab.values[(i, t)] = v
    return tab


def render_table(T: CohTable) -> str:
    """Macaulay2-style grid: a "total:" header row, then one row per i labelled
    i-(n+1) whose column c shows h^i(F(hi-i-c)); zeros print as "."."""
    ncols = T.hi - T.lo + 1
    labels = ["total:"] + [f"{i - (T.n + 1)}:" for i in range(T.n + 1)]
    grid = [[str(x) for x in T.totals()]]
    for i in range(T.n + 1):
        row = []
        for c in range(ncols):
            v = T.entry(i, T.hi - i - c)
            row.append(str(v) if v else ".")
        grid.append(row)
    width = [max(len(r[c]) for r in grid) for c in range(ncols)]
    lw = max(len(x) for x in labels)
    out = []
    for lab, row in zip(labels, grid):
        out.append(lab.rjust(lw) + " " + " ".join(x.rjust(w) for x, w in zip(row, width)))
    return "\n".join(out)
