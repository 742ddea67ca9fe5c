"""Finitely presented graded modules.

A :class:`GradedModule` is the cokernel of a :class:`GradedMatrix`
``(+)_j R(-src_j) -> (+)_i R(-tgt_i)``: generators sit in degrees ``tgt``,
relations are the columns.  Over a quotient ring R = P/(q) a module is
handled as the P-module with q * e_i adjoined to its relations, so every
computation happens in the ambient polynomial ring.

Matrix columns are stored sparsely as ``{row: Polynomial}``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import engine
from .engine import GB, Layout, Vector
from .gb import (GBError, Ideal, column_to_vec, relation_vectors, ring_layout,
                 vec_to_column, _degree)
from .gf2 import Echelon, nullspace
from .hilbert import hilbert_from_numerator, monomial_count
from .qpoly import QPoly
from .ring import GradedRing, Polynomial, RingError, RingMap

Column = Dict[int, Polynomial]


class ModuleError(ValueError):
    pass


# matrices --------------------------------------------------------------------------


class GradedMatrix:
    """Homogeneous matrix with row twists ``tgt`` and column twists ``src``.

    Entry (i, j) has degree ``src[j] - tgt[i]`` (or is zero).
    """

    def __init__(self, ring: GradedRing, tgt: Sequence[int], cols: Iterable[Column],
                 src: Optional[Sequence[int]] = None):
        self.ring = ring
        self.tgt = tuple(tgt)
        self.cols: List[Column] = []
        for c in cols:
            cc = {}
            for i, p in c.items():
                if not p.is_zero():
                    if not (0 <= i < len(self.tgt)):
                        raise ModuleError(f"row index {i} out of range")
                    cc[i] = p
            self.cols.append(cc)
        inferred = []
        for j, c in enumerate(self.cols):
            deg = None
            for i, p in sorted(c.items()):
                if not p.is_homogeneous():
                    raise ModuleError(f"entry ({i},{j}) is not homogeneous: {p}")
                d = p.degree() + self.tgt[i]
                if deg is None:
                    deg = d
                elif d != deg:
                    raise ModuleError(f"entry ({i},{j}) has degree {p.degree()}, "
                                      f"expected {deg - self.tgt[i]}")
            inferred.append(deg)
        if src is None:
            if any(d is None for d in inferred):
                raise ModuleError("zero columns need explicit source twists")
            self.src = tuple(inferred)
        else:
            self.src = tuple(src)
            if len(self.src) != len(self.cols):
                raise ModuleError("source twist vector has the wrong length")
            for j, (d, s) in enumerate(zip(inferred, self.src)):
                if d is not None and d != s:
                    raise ModuleError(f"column {j} has degree {d}, declared {s}")

    # construction ----------------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: GradedRing, rows: Sequence[Sequence], tgt: Optional[Sequence[int]] = None,
                  src: Optional[Sequence[int]] = None) -> "GradedMatrix":
        """Build from a row-major list of polynomials or strings."""
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ModuleError("ragged matrix")
        tgt = tuple(tgt) if tgt is not None else (0,) * nrows
        cols: List[Column] = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                p = ring.parse(x) if isinstance(x, str) else (ring.one() * x if isinstance(x, int) else x)
                if not p.is_zero():
                    cols[j][i] = ring._reduce(dict(p.terms)) if p.ring is not ring else p
        return cls(ring, tgt, cols, src)

    @classmethod
    def identity(cls, ring: GradedRing, degrees: Sequence[int]) -> "GradedMatrix":
        return cls(ring, degrees, [{i: ring.one()} for i in range(len(degrees))], degrees)

    @classmethod
    def zero(cls, ring: GradedRing, tgt: Sequence[int], src: Sequence[int]) -> "GradedMatrix":
        return cls(ring, tgt, [{} for _ in src], src)

    # access ------------------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.tgt), len(self.cols)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.cols[j].get(i, self.ring.zero())

    def rows(self) -> List[List[Polynomial]]:
        return [[self.entry(i, j) for j in range(len(self.cols))] for i in range(len(self.tgt))]

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def transpose(self) -> "GradedMatrix":
        """The dual map: twists are negated and swapped."""
        cols: List[Column] = [{} for _ in self.tgt]
        for j, c in enumerate(self.cols):
            for i, p in c.items():
                cols[i][j] = p
        return GradedMatrix(self.ring, [-d for d in self.src], cols, [-d for d in self.tgt])

    def __mul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if len(self.cols) != len(other.tgt):
            raise ModuleError("shape mismatch in matrix product")
        out = []
        for c in other.cols:
            acc: Column = {}
            for k, p in c.items():
                for i, a in self.cols[k].items():
                    v = acc.get(i)
                    acc[i] = a * p if v is None else v + a * p
            out.append({i: p for i, p in acc.items() if not p.is_zero()})
        return GradedMatrix(self.ring, self.tgt, out, other.src)

    def submatrix(self, rows: Optional[Sequence[int]] = None, cols: Optional[Sequence[int]] = None) -> "GradedMatrix":
        rows = list(range(len(self.tgt))) if rows is None else list(rows)
        cols = list(range(len(self.cols))) if cols is None else list(cols)
        index = {r: k for k, r in enumerate(rows)}
        new = [{index[i]: p for i, p in self.cols[j].items() if i in index} for j in cols]
        return GradedMatrix(self.ring, [self.tgt[r] for r in rows], new, [self.src[j] for j in cols])

    def concat(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.tgt != other.tgt:
            raise ModuleError("row twists differ")
        return GradedMatrix(self.ring, self.tgt, self.cols + other.cols, self.src + other.src)

    def direct_sum(self, other: "GradedMatrix") -> "GradedMatrix":
        n = len(self.tgt)
        shifted = [{i + n: p for i, p in c.items()} for c in other.cols]
        return GradedMatrix(self.ring, self.tgt + other.tgt, self.cols + shifted, self.src + other.src)

    def apply_map(self, m: RingMap) -> "GradedMatrix":
        """Entrywise ring map; twists are multiplied by the degree scaling."""
        s = m.scale
        cols = [{i: m.apply(p) for i, p in c.items()} for c in self.cols]
        return GradedMatrix(m.target, [s * d for d in self.tgt], cols, [s * d for d in self.src])

    def over(self, ring: GradedRing) -> "GradedMatrix":
        """The same matrix read in another ring on the same variables (e.g. mod q)."""
        if ring.variables != self.ring.variables:
            raise ModuleError("rings have different variables")
        cols = [{i: ring._reduce(dict(p.terms)) for i, p in c.items()} for c in self.cols]
        return GradedMatrix(ring, self.tgt, cols, self.src)

    def vectors(self, layout: Optional[Layout] = None) -> List[Vector]:
        layout = layout or ring_layout(self.ring, self.tgt)
        return [column_to_vec(layout, c) for c in self.cols]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.tgt == other.tgt and self.src == other.src
                and all(a == b for a, b in zip(self.cols, other.cols)))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GradedMatrix({len(self.tgt)}x{len(self.cols)} over {self.ring})"


# modules -----------------------------------------------------------------------------


class GradedModule:
    """Cokernel of ``relations``; generators in degrees ``relations.tgt``."""

    def __init__(self, relations: GradedMatrix, name: str = ""):
        self.relations = relations
        self.ring = relations.ring
        self.degrees = relations.tgt
        self.name = name
        self._gb: Optional[GB] = None
        self._layout: Optional[Layout] = None

    @classmethod
    def free(cls, ring: GradedRing, degrees: Sequence[int]) -> "GradedModule":
        return cls(GradedMatrix(ring, degrees, [], []))

    @classmethod
    def cokernel(cls, matrix: GradedMatrix) -> "GradedModule":
        return cls(matrix)

    @classmethod
    def from_vectors(cls, ring: GradedRing, degrees: Sequence[int], vecs: Sequence[Vector]) -> "GradedModule":
        L = ring_layout(ring, degrees)
        cols = [vec_to_column(L, ring, v) for v in vecs]
        keep = [c for c in cols if c]
        return cls(GradedMatrix(ring, degrees, keep))

    def __repr__(self) -> str:
        gens = Counter(self.degrees)
        g = ", ".join(f"{n}@{d}" for d, n in sorted(gens.items()))
        return f"GradedModule({self.name + ': ' if self.name else ''}gens {g or 'none'}; {len(self.relations.cols)} relations)"

    @property
    def ngens(self) -> int:
        return len(self.degrees)

    @property
    def layout(self) -> Layout:
        if self._layout is None:
            self._layout = ring_layout(self.ring, self.degrees)
        return self._layout

    def relation_vectors(self, with_q: bool = True) -> List[Vector]:
        vecs = [v for v in self.relations.vectors(self.layout) if v]
        if with_q:
            vecs += relation_vectors(self.layout, self.ring)
        return vecs

    def gb(self) -> GB:
        if self._gb is None:
            g = GB(self.layout)
            g.add_generators(self.relation_vectors())
            self._gb = g.compute()
        return self._gb

    # Hilbert data ------------------------------------------------------------------

    def hilbert_function(self, d: int) -> int:
        """dim_k M_d from the Groebner basis of the relations."""
        return self.gb().quotient_dim(d)

    def hilbert_function_la(self, d: int) -> int:
        """dim_k M_d by rank of the degree-d relation span (no Groebner basis)."""
        ring = self.ring
        index = {}
        for i, tw in enumerate(self.degrees):
            for e in ring.monomials_of_degree(d - tw):
                if ring.relation is not None and all(a >= b for a, b in zip(e, ring._rel_lead)):
                    continue
                index[(i, e)] = len(index)
        ech = Echelon()
        for j, c in enumerate(self.relations.cols):
            k = d - self.relations.src[j]
            if k < 0 or not c:
                continue
            for e in ring.monomials_of_degree(k):
                m = ring.monomial(e)
                x = 0
                for i, p in c.items():
                    for ee in (m * p).terms:
                        x ^= 1 << index[(i, ee)]
                ech.add(x)
        return len(index) - len(ech)

    def hilbert_numerator(self) -> Dict[int, int]:
        """Laurent numerator N(t) with H_M(t) = N(t) / (1-t)^n (standard grading)."""
        if not self.ring.is_standard:
            raise ModuleError("Hilbert series numerators need a standard grading")
        G = self.gb()
        out: Dict[int, int] = defaultdict(int)
        for c, tw in enumerate(self.degrees):
            if G.by_comp.get(c):
                num = G._numerator(c)
            else:
                num = (1,)
            for k, a in enumerate(num):
                if a:
                    out[k + tw] += a
        return {k: v for k, v in out.items() if v}

    def hilbert_polynomial(self) -> QPoly:
        n = self.ring.nvars
        hp = QPoly()
        for k, a in self.hilbert_numerator().items():
            hp = hp + QPoly.binomial(n - 1 - k, n - 1) * a
        return hp

    # constructions -----------------------------------------------------------------

    def twist(self, d: int) -> "GradedModule":
        """M(d): generator and relation degrees shift by -d."""
        r = self.relations
        return GradedModule(GradedMatrix(self.ring, [x - d for x in r.tgt], r.cols, [x - d for x in r.src]))

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        return GradedModule(self.relations.direct_sum(other.relations))

    def is_zero(self) -> bool:
        return prune(self).ngens == 0

    def presentation(self) -> GradedMatrix:
        return self.relations


def kill_generators(M: GradedModule, indices: Sequence[int]) -> GradedModule:
    """M / (generators at ``indices``), e.g. the quotient by a section."""
    one = M.ring.one()
    cols = list(M.relations.cols) + [{k: one} for k in indices]
    src = list(M.relations.src) + [M.degrees[k] for k in indices]
    return GradedModule(GradedMatrix(M.ring, M.degrees, cols, src), name=M.name)


def twist(M: GradedModule, d: int) -> GradedModule:
    return M.twist(d)


def hilbert_function(M: GradedModule, d: int) -> int:
    return M.hilbert_function(d)


def hilbert_polynomial(M: GradedModule) -> QPoly:
    return M.hilbert_polynomial()


def ring_module(ring: GradedRing, degree: int = 0) -> GradedModule:
    """The free module R(-degree)."""
    return GradedModule.free(ring, [degree])


# pruning -----------------------------------------------------------------------------


def _is_unit(p: Polynomial) -> bool:
    return len(p.terms) == 1 and not any(next(iter(p.terms)))


def prune(M: GradedModule) -> GradedModule:
    """Minimal presentation: cancel unit entries, then drop redundant relations."""
    ring = M.ring
    degrees = list(M.degrees)
    cols = [dict(c) for c in M.relations.cols]
    srcs = list(M.relations.src)
    alive_rows = list(range(len(degrees)))
    while True:
        hit = None
        for j, c in enumerate(cols):
            for i, p in c.items():
                if _is_unit(p):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        piv = cols[j]
        inv = ring.inverse(next(iter(piv[i].terms.values())))
        for k, c in enumerate(cols):
            if k == j:
                continue
            a = c.get(i)
            if a is None:
                continue
            f = a * inv
            for r, p in piv.items():
                v = c.get(r)
                nv = (v - f * p) if v is not None else (-(f * p))
                if nv.is_zero():
                    c.pop(r, None)
                else:
                    c[r] = nv
        del cols[j]
        del srcs[j]
        for c in cols:
            c.pop(i, None)
        alive_rows.remove(i)
    index = {r: k for k, r in enumerate(alive_rows)}
    new_degrees = [degrees[r] for r in alive_rows]
    new_cols = [{index[i]: p for i, p in c.items()} for c in cols]
    keep = [k for k, c in enumerate(new_cols) if c]
    new_cols = [new_cols[k] for k in keep]
    srcs = [srcs[k] for k in keep]
    if ring.characteristic == 2 and new_cols:
        L = ring_layout(ring, new_degrees)
        vecs = [column_to_vec(L, c) for c in new_cols]
        base = relation_vectors(L, ring)
        kept = engine.minimal_generators(L, vecs, base)
        new_cols = [new_cols[k] for k in kept]
        srcs = [srcs[k] for k in kept]
    return GradedModule(GradedMatrix(ring, new_degrees, new_cols, srcs), name=M.name)


# resolutions -------------------------------------------------------------------------


class BettiTable:
    """beta[(i, d)] = number of degree-d generators of the i-th free module."""

    def __init__(self, data: Dict[Tuple[int, int], int], truncated: bool = False):
        self.data = {k: v for k, v in data.items() if v}
        self.truncated = truncated

    @classmethod
    def from_degrees(cls, steps: Sequence[Sequence[int]], truncated: bool = False) -> "BettiTable":
        data: Dict[Tuple[int, int], int] = defaultdict(int)
        for i, degs in enumerate(steps):
            for d in degs:
                data[(i, d)] += 1
        return cls(dict(data), truncated)

    def step(self, i: int) -> Dict[int, int]:
        return {d: v for (k, d), v in sorted(self.data.items()) if k == i}

    def ranks(self) -> List[int]:
        if not self.data:
            return []
        top = max(i for i, _ in self.data)
        return [sum(self.step(i).values()) for i in range(top + 1)]

    def __eq__(self, other) -> bool:
        if isinstance(other, BettiTable):
            return self.data == other.data
        if isinstance(other, dict):
            return self.data == {k: v for k, v in other.items() if v}
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def render(self) -> str:
        """Macaulay2-style grid: columns = steps, rows = d - i."""
        if not self.data:
            return "total: 0"
        steps = sorted({i for i, _ in self.data})
        top = max(steps)
        rows = sorted({d - i for i, d in self.data})
        cells = [[str(self.data.get((i, r + i), 0) or ".") for i in range(top + 1)] for r in rows]
        totals = [str(sum(self.step(i).values())) for i in range(top + 1)]
        width = [max(len(totals[c]), *(len(row[c]) for row in cells)) for c in range(top + 1)]
        labels = [f"{r}:" for r in rows] + ["total:"]
        lw = max(len(x) for x in labels)
        out = ["total:".rjust(lw) + " " + " ".join(t.rjust(w) for t, w in zip(totals, width))]
        for r, row in zip(rows, cells):
            out.append(f"{r}:".rjust(lw) + " " + " ".join(x.rjust(w) for x, w in zip(row, width)))
        return "\n".join(out)

    def __repr__(self) -> str:
        return f"BettiTable({self.data}{', truncated' if self.truncated else ''})"


class Resolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... of a pruned module."""

    def __init__(self, module: GradedModule, maps: List[GradedMatrix], truncated: bool):
        self.module = module
        self.maps = maps          # maps[k] : F_{k+1} -> F_k
        self.truncated = truncated

    @property
    def free_degrees(self) -> List[Tuple[int, ...]]:
        out = [tuple(self.module.degrees)]
        for m in self.maps:
            out.append(m.src)
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out

    def betti(self) -> BettiTable:
        return BettiTable.from_degrees(self.free_degrees, self.truncated)

    def differential(self, k: int) -> GradedMatrix:
        """d_k : F_k -> F_{k-1} (k >= 1); zero map outside the computed range."""
        degs = self.free_degrees
        if 1 <= k <= len(self.maps):
            return self.maps[k - 1]
        tgt = degs[k - 1] if 0 <= k - 1 < len(degs) else ()
        src = degs[k] if 0 <= k < len(degs) else ()
        return GradedMatrix.zero(self.module.ring, tgt, src)

    def hilbert_polynomial(self) -> QPoly:
        if self.truncated:
            raise ModuleError("truncated resolution has no Hilbert polynomial")
        ring = self.module.ring
        n = ring.nvars
        hp = QPoly()
        for i, degs in enumerate(self.free_degrees):
            for d in degs:
                hp = hp + QPoly.binomial(n - 1 - d, n - 1) * (-1) ** i
        if ring.relation is not None:
            raise ModuleError("use the ambient ring for Hilbert polynomials of quotient-ring resolutions")
        return hp


def _syzygy_step(ring: GradedRing, tgt: Sequence[int], d: GradedMatrix, progress=None) -> GradedMatrix:
    """Minimal generators of ker(d) (over the quotient ring if there is one)."""
    src = ring_layout(ring, d.src)
    tl = ring_layout(ring, tgt)
    images = [column_to_vec(tl, c) for c in d.cols]
    modulo = relation_vectors(tl, ring)
    known = relation_vectors(src, ring)
    found, _ = engine.kernel(src, tl, images, modulo=modulo, known=known, progress=progress)
    cols = [vec_to_column(src, ring, v) for v in found]
    return GradedMatrix(ring, d.src, cols)


def free_resolution(M: GradedModule, length_cap: Optional[int] = None, progress=None) -> Resolution:
    """Minimal free resolution of M; over a polynomial ring it terminates by
    step #vars, over a quotient ring it stops at ``length_cap`` (default 6)."""
    ring = M.ring
    P = prune(M)
    if length_cap is None:
        length_cap = ring.nvars + 1 if ring.relation is None else 6
    maps: List[GradedMatrix] = []
    if not P.relations.cols:
        return Resolution(P, maps, False)
    maps.append(P.relations)
    truncated = False
    while True:
        if len(maps) >= length_cap:
            truncated = True
            break
        nxt = _syzygy_step(ring, maps[-1].tgt, maps[-1], progress)
        if not nxt.cols:
            break
        maps.append(nxt)
    if ring.relation is None and truncated:
        # a polynomial-ring resolution may simply have been capped early
        pass
    return Resolution(P, maps, truncated)


def compose_is_zero(a: GradedMatrix, b: GradedMatrix) -> bool:
    """a * b == 0 over a's ring (quotient relations applied)."""
    return (a * b).is_zero()


# Hom and Ext -----------------------------------------------------------------------


def _hom_free_layout(ring: GradedRing, F: Sequence[int], G: Sequence[int]) -> Layout:
    """Hom((+)R(-F_a), (+)R(-G_b)) with basis (a, b) -> index a*len(G) + b."""
    return ring_layout(ring, [g - f for f in F for g in G])


def _hom_complex_vectors(ring, F_prev, F_cur, F_next, d_cur, d_next, N: GradedModule):
    """Vectors for Hom(F_., N) at the middle spot.

    Returns (layout of Hom(F_cur, G0), layout of Hom(F_next, G0), images of the
    basis of Hom(F_cur, G0) under composition with d_next, modulo vectors in
    Hom(F_next, G0), known cycle vectors in Hom(F_cur, G0)).
    """
    G = list(N.degrees)
    nG = len(G)
    Q = [c for c in N.relations.cols if c]
    L_cur = _hom_free_layout(ring, F_cur, G)
    L_next = _hom_free_layout(ring, F_next, G)
    # phi -> phi o d_next :  (a, b) -> sum_j d_next[a, j] (j, b)
    per_a: List[Dict[int, List[Polynomial]]] = [defaultdict(list) for _ in F_cur]
    for j, col in enumerate(d_next.cols):
        for a, p in col.items():
            per_a[a][j].append(p)
    images = []
    for a in range(len(F_cur)):
        for b in range(nG):
            ent = []
            for j, ps in per_a[a].items():
                for p in ps:
                    ent.extend((j * nG + b, e) for e in p.terms)
            images.append(L_next.vector(ent))
    modulo = [L_next.vector((j * nG + b, e) for b, p in q.items() for e in p.terms)
              for j in range(len(F_next)) for q in Q]
    modulo += relation_vectors(L_next, ring)
    known = [L_cur.vector((a * nG + b, e) for b, p in q.items() for e in p.terms)
             for a in range(len(F_cur)) for q in Q]
    known += relation_vectors(L_cur, ring)
    # boundaries psi o d_cur for psi in Hom(F_prev, G0)
    for k in range(len(F_prev)):
        for b in range(nG):
            ent = []
            for a, col in enumerate(d_cur.cols):
                p = col.get(k)
                if p is not None:
                    ent.extend((a * nG + b, e) for e in p.terms)
            v = L_cur.vector(ent)
            if v:
                known.append(v)
    return L_cur, L_next, images, modulo, known


class ExtData:
    """Ext^i(M, N) as a presented module together with its cycle generators."""

    def __init__(self, module: GradedModule, cycles: List[Vector], layout: Layout,
                 F_cur: Sequence[int], N: GradedModule):
        self.module = module
        self.cycles = cycles
        self.layout = layout
        self.F_cur = tuple(F_cur)
        self.N = N

    def cocycle_map(self, k: int) -> GradedMatrix:
        """The k-th generator as a matrix F_i -> G_0 (rows: N's generators)."""
        nG = len(self.N.degrees)
        ring = self.N.ring
        cols: List[Column] = [dict() for _ in self.F_cur]
        col = vec_to_column(self.layout, ring, self.cycles[k])
        for idx, p in col.items():
            a, b = divmod(idx, nG)
            cols[a][b] = p
        deg = self.module.degrees[k]
        return GradedMatrix(ring, self.N.degrees, cols, [f + deg for f in self.F_cur])


def _homology_module(ring, L_cur, L_next, images, modulo, known) -> Tuple[GradedModule, List[Vector]]:
    found, _ = engine.kernel(L_cur, L_next, images, modulo=modulo, known=known)
    if not found:
        return GradedModule.free(ring, []), []
    degs = [L_cur.tdeg(v[0]) for v in found]
    src = ring_layout(ring, degs)
    rel, _ = engine.kernel(src, L_cur, found, modulo=known, known=relation_vectors(src, ring))
    mod = GradedModule(GradedMatrix(ring, degs, [vec_to_column(src, ring, v) for v in rel]))
    return mod, found


def ext_data(i: int, M: GradedModule, N: GradedModule, resolution: Optional[Resolution] = None) -> ExtData:
    ring = M.ring
    if not ring.same_as(N.ring):
        raise ModuleError("Ext needs modules over the same ring")
    res = resolution or free_resolution(M, length_cap=i + 2 if ring.relation is not None else None)
    degs = res.free_degrees
    def F(k):
        return degs[k] if 0 <= k < len(degs) else ()
    F_prev, F_cur, F_next = F(i - 1), F(i), F(i + 1)
    d_cur = res.differential(i) if i >= 1 else GradedMatrix.zero(ring, (), F_cur)
    d_next = res.differential(i + 1)
    if not F_cur:
        return ExtData(GradedModule.free(ring, []), [], ring_layout(ring, []), F_cur, N)
    L_cur, L_next, images, modulo, known = _hom_complex_vectors(ring, F_prev, F_cur, F_next, d_cur, d_next, N)
    mod, cycles = _homology_module(ring, L_cur, L_next, images, modulo, known)
    return ExtData(mod, cycles, L_cur, F_cur, N)


def ext_module(i: int, M: GradedModule, N: GradedModule) -> GradedModule:
    """Ext^i_R(M, N); Ext^0 = Hom."""
    if i < 0 or i > M.ring.nvars + (0 if M.ring.relation is None else 64):
        return GradedModule.free(M.ring, [])
    return ext_data(i, M, N).module


def hom_module(M: GradedModule, N: GradedModule) -> GradedModule:
    return ext_module(0, M, N)


def dual_module(M: GradedModule) -> GradedModule:
    """Hom(M, R); reflexive, hence the module of sections of the dual sheaf."""
    return hom_module(M, ring_module(M.ring))


def dual_sheaf(M: GradedModule) -> GradedModule:
    return prune(dual_module(M))


def double_dual(M: GradedModule) -> GradedModule:
    return dual_sheaf(dual_sheaf(M))


# kernels and images ----------------------------------------------------------------


def image_module(A: GradedMatrix) -> GradedModule:
    """im(A) presented by its column generators and their syzygies."""
    nz = [j for j, c in enumerate(A.cols) if c]
    B = A.submatrix(cols=nz)
    syz = _syzygy_step(A.ring, B.tgt, B)
    return GradedModule(syz)


def kernel_matrix(A: GradedMatrix) -> GradedMatrix:
    """Minimal generators of ker(A) as columns."""
    return _syzygy_step(A.ring, A.tgt, A)


def module_map_kernel(A: GradedMatrix, N: GradedModule) -> GradedMatrix:
    """Generators of {v in F : A v in im(relations of N)}, modulo nothing."""
    ring = A.ring
    src = ring_layout(ring, A.src)
    tl = N.layout
    images = [column_to_vec(tl, c) for c in A.cols]
    found, _ = engine.kernel(src, tl, images, modulo=N.relation_vectors(), known=relation_vectors(src, ring))
    return GradedMatrix(ring, A.src, [vec_to_column(src, ring, v) for v in found])


# tensor constructions ----------------------------------------------------------------


def tensor(M: GradedModule, N: GradedModule) -> GradedModule:
    ring = M.ring
    nN = len(N.degrees)
    degs = [a + b for a in M.degrees for b in N.degrees]
    cols: List[Column] = []
    srcs: List[int] = []
    for j, c in enumerate(M.relations.cols):
        for b in range(nN):
            cols.append({i * nN + b: p for i, p in c.items()})
            srcs.append(M.relations.src[j] + N.degrees[b])
    for j, c in enumerate(N.relations.cols):
        for a in range(len(M.degrees)):
            cols.append({a * nN + i: p for i, p in c.items()})
            srcs.append(N.relations.src[j] + M.degrees[a])
    return GradedModule(GradedMatrix(ring, degs, cols, srcs))


def sym2(M: GradedModule) -> GradedModule:
    """Sym^2 of the cokernel: e_i e_j (i <= j) modulo relation * generator."""
    ring = M.ring
    n = len(M.degrees)
    pairs = list(combinations_with_replacement(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    degs = [M.degrees[i] + M.degrees[j] for i, j in pairs]
    cols: List[Column] = []
    srcs: List[int] = []
    for j, c in enumerate(M.relations.cols):
        for k in range(n):
            col: Column = {}
            for i, p in c.items():
                key = index[(min(i, k), max(i, k))]
                v = col.get(key)
                col[key] = p if v is None else v + p
            col = {a: b for a, b in col.items() if not b.is_zero()}
            cols.append(col)
            srcs.append(M.relations.src[j] + M.degrees[k])
    return GradedModule(GradedMatrix(ring, degs, cols, srcs))


def wedge2(M: GradedModule) -> GradedModule:
    """Exterior square of the cokernel (alternating: e_i ^ e_i = 0)."""
    ring = M.ring
    n = len(M.degrees)
    pairs = list(combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    degs = [M.degrees[i] + M.degrees[j] for i, j in pairs]
    cols: List[Column] = []
    srcs: List[int] = []
    char = ring.characteristic
    for j, c in enumerate(M.relations.cols):
        for k in range(n):
            col: Column = {}
            for i, p in c.items():
                if i == k:
                    continue
                key = index[(min(i, k), max(i, k))]
                term = p if (i < k or char == 2) else -p
                v = col.get(key)
                col[key] = term if v is None else v + term
            col = {a: b for a, b in col.items() if not b.is_zero()}
            cols.append(col)
            srcs.append(M.relations.src[j] + M.degrees[k])
    return GradedModule(GradedMatrix(ring, degs, cols, srcs))


# minors ----------------------------------------------------------------------------------


def minors(k: int, A: GradedMatrix) -> List[Polynomial]:
    """All k x k minors, computed in the ambient ring and reduced mod the relation."""
    ring = A.ring
    amb = ring.ambient
    rows, ncols = A.shape
    if k > min(rows, ncols) or k <= 0:
        raise ModuleError(f"k = {k} out of range for a {rows}x{ncols} matrix")
    ent = [[Polynomial(amb, A.entry(i, j).terms) for j in range(ncols)] for i in range(rows)]
    out = []
    for rsel in combinations(range(rows), k):
        cache: Dict[Tuple[int, ...], Polynomial] = {}

        def det(level: int, cset: Tuple[int, ...]) -> Polynomial:
            # expand along row rsel[level] using the columns in cset
            if level == k:
                return amb.one()
            hit = cache.get(cset)
            if hit is not None:
                return hit
            acc = amb.zero()
            r = rsel[level]
            for pos, c in enumerate(cset):
                a = ent[r][c]
                if a.is_zero():
                    continue
                sub = det(level + 1, cset[:pos] + cset[pos + 1:])
                if sub.is_zero():
                    continue
                term = a * sub
                acc = acc - term if pos % 2 else acc + term
            cache[cset] = acc
            return acc

        # cache keyed by remaining columns is valid since the level is determined by len(cset)
        for csel in combinations(range(ncols), k):
            p = ring._reduce(dict(det(0, csel).terms))
            if not p.is_zero():
                out.append(p)
    return out


def minors_ideal(k: int, A: GradedMatrix) -> Ideal:
    return Ideal(A.ring, minors(k, A))


def determinant(A: GradedMatrix) -> Polynomial:
    n, m = A.shape
    if n != m:
        raise ModuleError("determinant of a non-square matrix")
    ms = minors(n, A)
    return ms[0] if ms else A.ring.zero()


# ring changes --------------------------------------------------------------------------


def pullback_module(m: RingMap, M: GradedModule) -> GradedModule:
    """m^*(M): apply m to the presentation; degrees scale by m.scale."""
    if not M.ring.same_as(m.source):
        raise ModuleError("module does not live over the source of the map")
    ok, msg = m.validate()
    if not ok:
        raise ModuleError(f"invalid ring map: {msg}")
    return GradedModule(M.relations.apply_map(m))


def frobenius_map(ring: GradedRing) -> RingMap:
    if ring.characteristic != 2:
        raise ModuleError("Frobenius pullback is implemented in characteristic 2 only")
    return RingMap(ring, ring, [v * v for v in ring.gens()], 2, name="frobenius")


def frobenius_pullback(M: GradedModule) -> GradedModule:
    return pullback_module(frobenius_map(M.ring), M)


# change of rings ---------------------------------------------------------------------


def restrict_scalars(M: GradedModule) -> GradedModule:
    """View a module over k[z]/(q) as a module over k[z] (q acts as zero)."""
    ring = M.ring
    if ring.relation is None:
        return M
    amb = ring.ambient
    q = Polynomial(amb, ring.relation.terms)
    cols = [{i: Polynomial(amb, p.terms) for i, p in c.items()} for c in M.relations.cols]
    src = list(M.relations.src)
    for i, d in enumerate(M.degrees):
        cols.append({i: q})
        src.append(d + q.degree())
    return GradedModule(GradedMatrix(amb, M.degrees, cols, src), name=M.name)


# extensions --------------------------------------------------------------------------


@dataclass
class Extension:
    """Middle term E of 0 -> M -> E -> N -> 0 built from a class in Ext^1(N, M)."""

    module: GradedModule
    split: bool
    cocycle: Optional[GradedMatrix] = None
    ext_dim: Optional[int] = None     # dim Ext^1(N, M)_0 when a class was chosen


def extension_module(N: GradedModule, M: GradedModule, e: Optional[int] = 0,
                     resolution: Optional[Resolution] = None) -> Extension:
    """Extension of N by M classified by the ``e``-th degree-0 generator of Ext^1(N, M).

    ``e=None`` requests the zero class, giving M (+) N with ``split=True``.
    With F_1 -> F_0 -> N the start of a resolution and c : F_1 -> G_0(M) a
    cocycle, E = (G_0(M) (+) F_0) / (relations of M, (c(y), d_1(y)) : y in F_1).
    """
    ring = M.ring
    if e is None:
        return Extension(M.direct_sum(N), True, None)
    res = resolution or free_resolution(N, length_cap=3 if ring.relation is not None else None)
    data = ext_data(1, N, M, res)
    degree0 = [k for k, d in enumerate(data.module.degrees) if d == 0]
    if e < 0 or e >= len(degree0):
        raise ModuleError(f"Ext^1 has {len(degree0)} degree-0 generators; index {e} unavailable")
    c = data.cocycle_map(degree0[e])
    d1 = res.differential(1)
    nM = len(M.degrees)
    degrees = list(M.degrees) + list(res.free_degrees[0])
    cols: List[Column] = [dict(col) for col in M.relations.cols]
    src = list(M.relations.src)
    for j in range(len(d1.cols)):
        col = dict(c.cols[j])
        for i, p in d1.cols[j].items():
            col[nM + i] = p
        cols.append(col)
        src.append(d1.src[j])
    E = GradedModule(GradedMatrix(ring, degrees, cols, src))
    return Extension(E, False, c, data.module.hilbert_function(0))


# finite pushforwards -------------------------------------------------------------------


class PushforwardError(ModuleError):
    pass


@dataclass
class Pushforward:
    """Presentation over the source ring of the parity-``parity`` part of m_* M."""

    module: GradedModule
    generators: List[Column]          # elements of M's free cover
    target_dims: List[int]            # dim M_{s d + parity}, d = 0..degree_bound
    degree_bound: int
    parity: int

    def generator_degrees(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.module.degrees).items()))

    def relation_degrees(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.module.relations.src).items()))


def _standard_monomials(ring: GradedRing, d: int) -> List[Tuple[int, ...]]:
    mons = ring.monomials_of_degree(d) if d >= 0 else []
    if ring.relation is None:
        return list(mons)
    lead = ring._rel_lead
    return [m for m in mons if not all(a >= b for a, b in zip(m, lead))]


def pushforward_presentation(m: RingMap, M: GradedModule, degree_bound: int = 10,
                             parity: int = 0, max_degree: Optional[int] = None) -> Pushforward:
    """Minimal presentation of (m_* M)_parity over m's source ring.

    The module in source degree d is M_{s d + parity} (s = m.scale), with a
    source element a acting as multiplication by m(a).  Generators and
    relations are found degree by degree with GF(2) linear algebra; the
    construction stops as soon as the Hilbert function of the presentation
    agrees with dim M_{s d + parity} for every d <= degree_bound.
    """
    A, B = m.source, m.target
    if not B.same_as(M.ring):
        raise PushforwardError("module does not live on the target of the map")
    if A.characteristic != 2:
        raise PushforwardError("pushforwards are implemented over GF(2) only")
    ok, msg = m.validate()
    if not ok:
        raise PushforwardError(f"invalid ring map: {msg}")
    s = m.scale
    if not 0 <= parity < s:
        raise PushforwardError(f"parity {parity} out of range for scale {s}")
    if max_degree is None:
        max_degree = degree_bound
    L = M.layout
    G = M.gb()
    target = [M.hilbert_function(s * d + parity) for d in range(degree_bound + 1)]
    image_cache: Dict[Tuple[int, ...], Polynomial] = {}

    def image(mu):
        p = image_cache.get(mu)
        if p is None:
            p = m.apply(A.monomial(mu))
            image_cache[mu] = p
        return p

    gens: List[Column] = []            # generators as columns of M's free cover
    gdeg: List[int] = []
    rel_cols: List[Column] = []
    rel_src: List[int] = []
    prev_basis: List[Tuple[int, Tuple[int, ...]]] = []
    prev_kernel: List[int] = []
    module = None
    for d in range(max_degree + 1):
        e = s * d + parity
        # F_d basis: (generator k, standard monomial of degree d - g_k)
        basis = [(k, mu) for k in range(len(gens)) for mu in _standard_monomials(A, d - gdeg[k])]
        bindex = {b: i for i, b in enumerate(basis)}
        term_bit: Dict[int, int] = {}

        def to_bits(vec) -> int:
            x = 0
            for t in vec:
                b = term_bit.get(t)
                if b is None:
                    b = term_bit[t] = len(term_bit)
                x ^= 1 << b
            return x

        rows = []
        for k, mu in basis:
            col = {c: image(mu) * p for c, p in gens[k].items()}
            rows.append(to_bits(G.normal_form(column_to_vec(L, col))))
        # kernel and the part implied by lower relations
        kernel = nullspace(rows)
        implied = Echelon()
        for comb in prev_kernel:
            for i in range(A.nvars):
                x = 0
                for idx in _bit_positions(comb):
                    k, mu = prev_basis[idx]
                    prod = A.monomial(mu) * A.var(i)
                    for nu in prod.terms:
                        x ^= 1 << bindex[(k, nu)]
                implied.add(x)
        for comb in kernel:
            if implied.add(comb):
                col: Column = {}
                for idx in _bit_positions(comb):
                    k, mu = basis[idx]
                    col[k] = col.get(k, A.zero()) + A.monomial(mu)
                rel_cols.append({k: p for k, p in col.items() if not p.is_zero()})
                rel_src.append(d)
        # new generators: complete the image to all of M_e
        span = Echelon()
        for r in rows:
            span.add(r)
        need = M.hilbert_function(e) - len(span)
        if need:
            for c, tw in enumerate(M.degrees):
                if need == 0:
                    break
                for mon in B.monomials_of_degree(e - tw) if e - tw >= 0 else []:
                    v = G.normal_form(L.vector([(c, mon)]))
                    if not v:
                        continue
                    if span.add(to_bits(v)):
                        gens.append(vec_to_column(L, B, v))
                        gdeg.append(d)
                        need -= 1
                        if need == 0:
                            break
            if need:
                raise PushforwardError(f"could not complete degree {d}")
        # kernel combos refer to the F_d basis before the new generators were added
        prev_basis = basis + [(k, (0,) * A.nvars) for k in range(len(gens)) if gdeg[k] == d]
        prev_kernel = kernel
        module = GradedModule(GradedMatrix(A, gdeg, rel_cols, rel_src))
        if d >= 1 and all(module.hilbert_function(x) == target[x] for x in range(degree_bound + 1)):
            return Pushforward(module, gens, target, degree_bound, parity)
    raise PushforwardError(f"presentation not stable by degree {max_degree}; raise degree_bound")


def _bit_positions(x: int) -> List[int]:
    out = []
    while x:
        b = x.bit_length() - 1
        out.append(b)
        x ^= 1 << b
    return out
