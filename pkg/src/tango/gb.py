"""Ideals and submodules of free modules: Groebner bases, normal forms,
syzygies, ideal quotients, saturation and kernels of ring maps.

Everything is computed by the bit-packed engine in :mod:`tango.engine`,
which works over GF(2).  Over a quotient ring k[z]/(q) we compute in the
ambient polynomial ring with q (times every basis vector) adjoined to the
generators and strip q-multiples from the output.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import engine
from .engine import GB, Layout, Vector
from .ring import GradedRing, Polynomial, RingError, RingMap


class GBError(RuntimeError):
    pass


def _require_gf2(ring: GradedRing):
    if ring.characteristic != 2:
        raise GBError(f"the Groebner engine works over GF(2) only, not {ring}")


def ring_layout(ring: GradedRing, twists: Sequence[int], elim: Iterable[int] = (),
                position: str = "top") -> Layout:
    _require_gf2(ring)
    return Layout(ring.nvars, twists, ring.weights, elim, position)


# conversions -----------------------------------------------------------------


def poly_to_vec(layout: Layout, poly: Polynomial, comp: int = 0) -> Vector:
    return layout.vector((comp, e) for e in poly.terms)


def column_to_vec(layout: Layout, column: Dict[int, Polynomial]) -> Vector:
    return layout.vector((i, e) for i, p in column.items() for e in p.terms)


def vec_to_column(layout: Layout, ring: GradedRing, v: Vector) -> Dict[int, Polynomial]:
    acc: Dict[int, Dict] = {}
    for k in v:
        c, e = layout.split(k)
        acc.setdefault(c, {})[e] = 1
    out = {}
    for c, terms in acc.items():
        p = ring._reduce(terms)
        if not p.is_zero():
            out[c] = p
    return out


def relation_vectors(layout: Layout, ring: GradedRing) -> List[Vector]:
    """q * e_c for every component when ``ring`` is a quotient ring."""
    if ring.relation is None:
        return []
    return [poly_to_vec(layout, ring.relation, c) for c in range(len(layout.twists))]


def _degree(poly: Polynomial) -> int:
    if not poly.is_homogeneous():
        raise GBError(f"{poly} is not homogeneous")
    return poly.degree()


# ideals ----------------------------------------------------------------------


class Ideal:
    """Homogeneous ideal of a (quotient of a) polynomial ring over GF(2)."""

    def __init__(self, ring: GradedRing, gens: Iterable[Polynomial]):
        _require_gf2(ring)
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        for g in self.gens:
            if not g.ring.same_as(ring):
                raise RingError(f"{g} does not live in {ring}")
            _degree(g)
        self._gb: Optional[GB] = None
        self._layout = ring_layout(ring, [0])

    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.gens[:4]))}{', ...' if len(self.gens) > 4 else ''})"

    @property
    def layout(self) -> Layout:
        return self._layout

    def engine_gb(self) -> GB:
        if self._gb is None:
            L = self._layout
            g = GB(L, ideal=True)
            g.add_generators([poly_to_vec(L, p) for p in self.gens])
            g.add_generators(relation_vectors(L, self.ring), tags=[None])
            self._gb = g.compute()
        return self._gb

    def groebner_basis(self) -> List[Polynomial]:
        """Reduced Groebner basis (grevlex), without the quotient relation."""
        G = self.engine_gb()
        out = []
        rel = poly_to_vec(self._layout, self.ring.relation) if self.ring.relation is not None else None
        for v in G.reduced_basis():
            if rel is not None and v == rel:
                continue
            out.append(_vec_to_poly(self._layout, self.ring, v))
        return out

    def normal_form(self, p: Polynomial) -> Polynomial:
        v = self.engine_gb().normal_form(poly_to_vec(self._layout, p))
        return _vec_to_poly(self._layout, self.ring, v)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __contains__(self, p: Polynomial) -> bool:
        return self.contains(p)

    def is_unit(self) -> bool:
        return self.contains(self.ring.one())

    def is_zero(self) -> bool:
        return all(self.normal_form_in_ring(g).is_zero() for g in self.gens)

    def normal_form_in_ring(self, p: Polynomial) -> Polynomial:
        return self.ring._reduce(dict(p.terms))

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.issubset(other) and other.issubset(self)

    __hash__ = None  # type: ignore[assignment]

    def dim(self, d: int) -> int:
        """dim_k of the degree-d piece of the ideal (inside the ring)."""
        return self.ring.basis_dimension(d) - self.quotient_dim(d)

    def quotient_dim(self, d: int) -> int:
        """dim_k (ring / I)_d."""
        return self.engine_gb().quotient_dim(d)

    def max_degree(self) -> int:
        return max((_degree(g) for g in self.gens), default=0)


def _vec_to_poly(layout: Layout, ring: GradedRing, v: Vector) -> Polynomial:
    return ring._reduce({layout.exps(k): 1 for k in v})


def normal_form(p, G):
    """Remainder of a polynomial modulo an Ideal, or of a vector modulo a submodule."""
    if isinstance(G, Ideal):
        return G.normal_form(p)
    if isinstance(G, SubmoduleOfFree):
        return G.normal_form(p)
    raise TypeError("G must be an Ideal or a SubmoduleOfFree")


def groebner_basis(I: Ideal) -> List[Polynomial]:
    return I.groebner_basis()


# submodules of free modules ---------------------------------------------------


class SubmoduleOfFree:
    """Submodule of (+)_c R(-twist_c) generated by homogeneous columns.

    Columns are dicts ``{component: Polynomial}``.
    """

    def __init__(self, ring: GradedRing, twists: Sequence[int], columns: Iterable[Dict[int, Polynomial]],
                 position: str = "top"):
        _require_gf2(ring)
        self.ring = ring
        self.twists = tuple(twists)
        self.columns = [dict(c) for c in columns]
        self.layout = ring_layout(ring, self.twists, position=position)
        self._gb: Optional[GB] = None
        self.degrees = [self.column_degree(c) for c in self.columns]

    def column_degree(self, col: Dict[int, Polynomial]) -> Optional[int]:
        deg = None
        for i, p in col.items():
            if p.is_zero():
                continue
            d = _degree(p) + self.twists[i]
            if deg is not None and d != deg:
                raise GBError(f"column is not homogeneous: {col}")
            deg = d
        return deg

    def vectors(self) -> List[Vector]:
        return [column_to_vec(self.layout, c) for c in self.columns]

    def engine_gb(self) -> GB:
        if self._gb is None:
            g = GB(self.layout)
            g.add_generators(self.vectors())
            rel = relation_vectors(self.layout, self.ring)
            g.add_generators(rel, tags=[None] * len(rel))
            self._gb = g.compute()
        return self._gb

    def normal_form(self, col: Dict[int, Polynomial]) -> Dict[int, Polynomial]:
        v = self.engine_gb().normal_form(column_to_vec(self.layout, col))
        return vec_to_column(self.layout, self.ring, v)

    def contains(self, col: Dict[int, Polynomial]) -> bool:
        return not self.normal_form(col)

    def dim(self, d: int) -> int:
        """dim_k of the degree-d piece of the submodule inside R^r."""
        G = self.engine_gb()
        if self.ring.relation is None:
            return G.submodule_dim(d)
        return G.submodule_dim(d) - _q_free_dim(self.layout, self.ring, d)

    def quotient_dim(self, d: int) -> int:
        return self.engine_gb().quotient_dim(d)


def _q_free_dim(layout: Layout, ring: GradedRing, d: int) -> int:
    """dim of (q * free module) in degree d."""
    qd = ring.relation.degree()
    return layout.free_dim(d - qd)


def syzygies(M: SubmoduleOfFree):
    """Columns generating the module of relations among M's generators.

    Returns a GradedMatrix whose target twists are the generator degrees.
    Over a quotient ring the syzygies are taken over the quotient ring.
    """
    from .module import GradedMatrix
    ring = M.ring
    gens = [(j, c) for j, c in enumerate(M.columns) if M.degrees[j] is not None]
    src_twists = [M.degrees[j] if M.degrees[j] is not None else 0 for j in range(len(M.columns))]
    src = ring_layout(ring, src_twists)
    images = [column_to_vec(M.layout, c) for c in M.columns]
    modulo = relation_vectors(M.layout, ring)
    known = relation_vectors(src, ring)
    # zero columns have trivial syzygies e_j
    zero_cols = [j for j in range(len(M.columns)) if M.degrees[j] is None]
    if zero_cols:
        raise GBError("zero generators must be removed before computing syzygies")
    found, _ = engine.kernel(src, M.layout, images, modulo=modulo, known=known)
    cols = [vec_to_column(src, ring, v) for v in found]
    return GradedMatrix(ring, src_twists, cols)


# quotients, saturation, elimination -----------------------------------------------


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f J in I}, as the kernel of R -> (+)_j R/I, 1 -> (g_j)."""
    ring = I.ring
    if not J.gens:
        return Ideal(ring, [ring.one()])
    if J.is_unit():
        return Ideal(ring, I.gens)
    degs = [_degree(g) for g in J.gens]
    tgt = ring_layout(ring, [-d for d in degs])
    src = ring_layout(ring, [0])
    image = tgt.vector((c, e) for c, g in enumerate(J.gens) for e in g.terms)
    base = I.groebner_basis()
    modulo = [poly_to_vec(tgt, f, c) for c in range(len(degs)) for f in base]
    modulo += relation_vectors(tgt, ring)
    known = [poly_to_vec(src, f) for f in base] + relation_vectors(src, ring)
    found, _ = engine.kernel(src, tgt, [image], modulo=modulo, known=known)
    new = [_vec_to_poly(src, ring, v) for v in found]
    return Ideal(ring, list(I.gens) + new)


def irrelevant_ideal(ring: GradedRing) -> Ideal:
    return Ideal(ring, ring.gens())


def saturate(I: Ideal, J: Optional[Ideal] = None, max_iter: int = 64,
             method: str = "auto") -> Ideal:
    """(I : J^infinity) by iterating ideal quotients until they stabilise.

    With J the irrelevant ideal and ``method="auto"``, an ideal whose quotient
    vanishes in some degree (an m-primary ideal) saturates to the unit ideal
    directly; ``method="quotient"`` always iterates.
    """
    if method not in ("auto", "quotient"):
        raise GBError(f"unknown saturation method {method!r}")
    if J is None:
        J = irrelevant_ideal(I.ring)
        if method == "auto" and _is_artinian(I):
            return Ideal(I.ring, [I.ring.one()])
    cur = I
    for _ in range(max_iter):
        if cur.is_unit():
            return Ideal(I.ring, [I.ring.one()])
        nxt = ideal_quotient(cur, J)
        if nxt.issubset(cur):
            return cur
        cur = Ideal(I.ring, nxt.groebner_basis())
    raise GBError(f"saturation did not stabilise after {max_iter} quotients")


def _is_artinian(I: Ideal) -> bool:
    """Every variable has a pure power among the leading monomials."""
    n = I.ring.nvars
    hit = [False] * n
    for e in I.engine_gb().lead_exps:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            hit[support[0]] = True
    return all(hit)


def ring_map_kernel(m: RingMap) -> Ideal:
    """Kernel of a graded ring map by elimination on the graph ideal.

    The graph ring is k[y (source vars), x (target vars)]; y_i gets weight
    ``scale * w_i`` so that y_i - m(y_i) is homogeneous, and the x-block is
    eliminated.
    """
    src, tgt = m.source, m.target
    _require_gf2(tgt)
    ok, msg = m.validate()
    if not ok:
        raise GBError(f"invalid ring map: {msg}")
    ns, nt = src.nvars, tgt.nvars
    weights = [m.scale * w for w in src.weights] + list(tgt.weights)
    L = Layout(ns + nt, [0], weights, elim=range(ns, ns + nt))
    gens = []
    for i, im in enumerate(m.images):
        ent = [(0, tuple(1 if j == i else 0 for j in range(ns + nt)))]
        ent += [(0, (0,) * ns + e) for e in im.terms]
        gens.append(L.vector(ent))
    if tgt.relation is not None:
        gens.append(L.vector((0, (0,) * ns + e) for e in tgt.relation.terms))
    if src.relation is not None:
        # source relation is in the kernel by validity; include it for a clean answer
        pass
    G = GB(L, ideal=True)
    G.add_generators(gens)
    G.compute()
    out = []
    for v in G.reduced_basis():
        if all(not any(L.exps(k)[ns:]) for k in v):
            out.append(Polynomial(src.ambient, {L.exps(k)[:ns]: 1 for k in v}))
    if src.relation is not None:
        out = [src._reduce(dict(p.terms)) for p in out]
        out = [p for p in out if not p.is_zero()]
        return Ideal(src, [Polynomial(src, p.terms) for p in out])
    return Ideal(src, out)
