"""GF(2) Groebner engine for homogeneous submodules of graded free modules.

A term ``m * e_c`` is packed into one Python int whose integer order is the
module order, so that multiplying by a monomial is integer addition and a
divisibility test is a handful of bit operations:

* highest field: total degree ``deg m + twist(c)`` (biased to stay positive);
* then (TOP) the size of ``m`` on an eliminated block of variables, the
  weighted degree of ``m``, grevlex lanes of ``m``, and finally ``c``;
  or (POT) the component before the monomial fields.

Each grevlex lane stores ``255 - e_i`` in 9 bits, the spare top bit acting as
a guard for the lane-wise comparison.  Variable ``n-1`` owns the most
significant lane, which realises grevlex with ``x0 > x1 > ...``.

Vectors over GF(2) are tuples of term keys sorted in decreasing order.
"""

from __future__ import annotations

from collections import defaultdict
from operator import add

import numpy as np
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import hilbert
from .gf2 import bits

LANE = 9
KMAX = 255
BIAS = 1 << 11
Vector = Tuple[int, ...]


class EngineError(RuntimeError):
    pass


class Layout:
    """Term encoding for the free module  (+)_c S(-twist_c)  over GF(2)[x]."""

    def __init__(self, nvars: int, twists: Sequence[int], weights: Optional[Sequence[int]] = None,
                 elim: Iterable[int] = (), position: str = "top"):
        n = nvars
        self.nvars = n
        self.twists = tuple(twists)
        self.weights = tuple(weights) if weights is not None else (1,) * n
        self.elim = frozenset(elim)
        self.position = position
        if len(self.twists) >= 1 << 16:
            raise EngineError("too many components")
        if position == "top":
            self.CS = 0
            self.LS = 16
            self.MD = 16 + LANE * n
            self.EL = self.MD + 14
            self.TD = self.EL + 12
        elif position == "pot":
            self.LS = 0
            self.MD = LANE * n
            self.EL = self.MD + 14
            self.CS = self.EL + 12
            self.TD = self.CS + 16
        else:
            raise EngineError(f"unknown position {position!r}")
        self.LMASK = (1 << (LANE * n)) - 1
        self.GUARD = sum(1 << (LANE * i + 8) for i in range(n))
        full = sum(KMAX << (LANE * i) for i in range(n))
        self.var_inc = [
            (w << self.TD) + (w << self.MD) + ((1 if i in self.elim else 0) << self.EL)
            - (1 << (self.LS + LANE * i))
            for i, w in enumerate(self.weights)
        ]
        self.bases = [((tw + BIAS) << self.TD) + (c << self.CS) + (full << self.LS)
                      for c, tw in enumerate(self.twists)]
        self._inc_cache: Dict[Tuple[int, ...], int] = {}
        self._mono_cache: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}

    def signature(self):
        return (self.nvars, self.twists, self.weights, self.elim, self.position)

    def with_twists(self, twists: Sequence[int]) -> "Layout":
        return Layout(self.nvars, twists, self.weights, self.elim, self.position)

    # encoding --------------------------------------------------------------

    def inc(self, exps: Sequence[int]) -> int:
        exps = tuple(exps)
        v = self._inc_cache.get(exps)
        if v is None:
            v = 0
            for e, vi in zip(exps, self.var_inc):
                if e:
                    v += e * vi
            self._inc_cache[exps] = v
        return v

    def key(self, comp: int, exps: Sequence[int]) -> int:
        return self.bases[comp] + self.inc(exps)

    def comp(self, k: int) -> int:
        return (k >> self.CS) & 0xFFFF

    def tdeg(self, k: int) -> int:
        return (k >> self.TD) - BIAS

    def lanes(self, k: int) -> int:
        return (k >> self.LS) & self.LMASK

    def exps(self, k: int) -> Tuple[int, ...]:
        lanes = (k >> self.LS) & self.LMASK
        return tuple(KMAX - ((lanes >> (LANE * i)) & 511) for i in range(self.nvars))

    def split(self, k: int) -> Tuple[int, Tuple[int, ...]]:
        return self.comp(k), self.exps(k)

    def divides(self, b: int, a: int) -> bool:
        """Does term b divide term a (same component)?"""
        if ((b >> self.CS) ^ (a >> self.CS)) & 0xFFFF:
            return False
        g = self.GUARD
        return (((((b >> self.LS) & self.LMASK) | g) - ((a >> self.LS) & self.LMASK)) & g) == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.exps(a), self.exps(b)
        return self.bases[self.comp(a)] + self.inc(tuple(max(x, y) for x, y in zip(ea, eb)))

    def monos(self, d: int) -> List[Tuple[Tuple[int, ...], int]]:
        """(exps, inc) for all monomials of ring degree d, descending order."""
        hit = self._mono_cache.get(d)
        if hit is None:
            from .ring import _monomials_of_degree
            hit = [(e, self.inc(e)) for e in _monomials_of_degree(self.weights, d)] if d >= 0 else []
            self._mono_cache[d] = hit
        return hit

    def terms_of_degree(self, d: int) -> List[int]:
        out = []
        for c, tw in enumerate(self.twists):
            base = self.bases[c]
            out.extend(base + inc for _, inc in self.monos(d - tw))
        return out

    def free_dim(self, d: int) -> int:
        return sum(hilbert.monomial_count(self.weights, d - tw) for tw in self.twists)

    def vector(self, entries: Iterable[Tuple[int, Tuple[int, ...]]]) -> Vector:
        """Vector from (component, exps) pairs; repeated terms cancel."""
        s = set()
        for c, e in entries:
            s ^= {self.key(c, e)}
        return tuple(sorted(s, reverse=True))

    def degree_of(self, v: Vector) -> int:
        return self.tdeg(v[0])


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(sorted(set(a).symmetric_difference(b), reverse=True))


def vec_shift(v: Vector, inc: int) -> Vector:
    return tuple(k + inc for k in v)


class GB:
    """Degree-by-degree F4 over GF(2) for a homogeneous submodule.

    Inputs are added with :meth:`add_generators`; :meth:`compute` processes
    degrees in increasing order.  Inputs that survive reduction modulo the
    span of lower-degree multiples (and earlier inputs of the same degree)
    are recorded in ``minimal_tags``: these are minimal generators.
    """

    def __init__(self, layout: Layout, ideal: bool = False):
        self.L = layout
        self.ideal = ideal or len(layout.twists) == 1
        self.elems: List[Vector] = []
        self.leads: List[int] = []
        self.lead_lanes: List[int] = []
        self.lead_exps: List[Tuple[int, ...]] = []
        self._comp_arrays: Dict[int, Tuple[object, int]] = {}
        self._lanes_cache: Dict[Tuple[int, int], Tuple[list, object]] = {}
        self._lanes_fit = LANE * layout.nvars <= 63
        self._pack_vec = (np.asarray([1 << (8 * i) for i in range(layout.nvars)], dtype=np.int64)
                          if layout.nvars <= 7 else None)
        self._weights = np.asarray(layout.weights, dtype=np.int64)
        self.by_comp: Dict[int, List[int]] = defaultdict(list)
        # pair queue: component -> degree -> [(lcm, i, j, lcm lanes)]
        self.pairs: Dict[int, Dict[int, List[Tuple[int, int, int, int]]]] = defaultdict(lambda: defaultdict(list))
        self.inputs: Dict[int, List[Tuple[Vector, object]]] = defaultdict(list)
        self.done: Optional[int] = None
        self.max_pair_degree: Optional[int] = None
        self.max_input_degree: Optional[int] = None
        # largest lcm degree of a pair kept after criterion M; bounds the syzygies
        self.syzygy_degree: Optional[int] = None
        self.minimal_tags: List[object] = []
        self._num_cache: Dict[int, Tuple[int, Tuple[int, ...]]] = {}
        self.stats = {"rows": 0, "reducers": 0, "degrees": 0}

    # input -----------------------------------------------------------------

    def add_generators(self, vecs: Iterable[Vector], tags: Optional[Iterable[object]] = None):
        vecs = list(vecs)
        tags = list(tags) if tags is not None else list(range(len(vecs)))
        for v, t in zip(vecs, tags):
            if not v:
                continue
            d = self.L.tdeg(v[0])
            if self.done is not None and d <= self.done:
                raise EngineError(f"generator of degree {d} added after degree {self.done} was closed")
            self.inputs[d].append((tuple(sorted(set(v), reverse=True)) if len(set(v)) != len(v) else v, t))
            if self.max_input_degree is None or d > self.max_input_degree:
                self.max_input_degree = d

    def append_basis(self, vecs: Sequence[Vector]):
        """Append elements whose lead terms are standard (no reduction)."""
        for v in sorted(vecs, key=lambda v: v[0]):
            self._insert(v)

    # queries ---------------------------------------------------------------

    def pending_degrees(self) -> List[int]:
        ds = {d for q in self.pairs.values() for d, ps in q.items() if ps}
        ds |= {d for d, xs in self.inputs.items() if xs}
        return sorted(ds)

    def is_complete(self) -> bool:
        return not self.pending_degrees()

    def find_divisor(self, t: int) -> int:
        L = self.L
        c = (t >> L.CS) & 0xFFFF
        lst = self.by_comp.get(c)
        if not lst:
            return -1
        g = L.GUARD
        tl = (t >> L.LS) & L.LMASK
        ll = self.lead_lanes
        for idx in lst:
            if (((ll[idx] | g) - tl) & g) == g:
                return idx
        return -1

    # main loop ---------------------------------------------------------------

    def compute(self, upto: Optional[int] = None) -> "GB":
        while True:
            ds = self.pending_degrees()
            if not ds or (upto is not None and ds[0] > upto):
                break
            self._process(ds[0])
        if upto is not None and (self.done is None or self.done < upto):
            self.done = upto
        return self

    def _process(self, d: int):
        L = self.L
        pairs = [p for q in self.pairs.values() for p in q.pop(d, ())]
        inputs = self.inputs.pop(d, [])
        if pairs and (self.max_pair_degree is None or d > self.max_pair_degree):
            self.max_pair_degree = d
        rows: List[Vector] = []
        seen_rows = set()
        for lcm, i, j, _ in pairs:
            for idx in (i, j):
                inc = lcm - self.leads[idx]
                if (idx, inc) in seen_rows:
                    continue
                seen_rows.add((idx, inc))
                rows.append(tuple(k + inc for k in self.elems[idx]))
        # symbolic preprocessing
        reducers: Dict[int, Vector] = {}
        seen = set()
        stack: List[int] = []
        for r in rows:
            stack.extend(r)
        for v, _ in inputs:
            stack.extend(v)
        find = self.find_divisor
        elems, leads = self.elems, self.leads
        while stack:
            t = stack.pop()
            if t in seen:
                continue
            seen.add(t)
            idx = find(t)
            if idx >= 0:
                inc = t - leads[idx]
                r = tuple(k + inc for k in elems[idx])
                reducers[t] = r
                stack.extend(r[1:])
        cols = sorted(seen)
        pos = {t: i for i, t in enumerate(cols)}
        self.stats["rows"] += len(rows) + len(inputs)
        self.stats["reducers"] += len(reducers)
        self.stats["degrees"] += 1

        def pack(v):
            return _pack_positions([pos[t] for t in v])

        piv: Dict[int, int] = {pos[t]: pack(r) for t, r in reducers.items()}
        new_bits: List[int] = []
        for r in rows:
            x = pack(r)
            while x:
                b = x.bit_length() - 1
                p = piv.get(b)
                if p is None:
                    piv[b] = x
                    new_bits.append(b)
                    break
                x ^= p
        for v, tag in inputs:
            x = pack(v)
            while x:
                b = x.bit_length() - 1
                p = piv.get(b)
                if p is None:
                    piv[b] = x
                    new_bits.append(b)
                    self.minimal_tags.append(tag)
                    break
                x ^= p
        if new_bits:
            # inter-reduce the new rows so the stored elements are sparse
            fresh = []
            for b in sorted(new_bits):
                y = piv[b] ^ (1 << b)
                out = 1 << b
                while y:
                    c = y.bit_length() - 1
                    p = piv.get(c)
                    if p is None:
                        out |= 1 << c
                        y ^= 1 << c
                    else:
                        y ^= p
                piv[b] = out
                fresh.append(out)
            for x in fresh:
                self._insert(tuple(cols[i] for i in bits(x)))
        self.done = d if self.done is None or d > self.done else self.done

    def _queue_lanes(self, c: int, deg: int, plist):
        """uint64 array of the lcm lanes of a pair list (grown incrementally)."""
        key = (c, deg)
        hit = self._lanes_cache.get(key)
        if hit is not None and hit[0] is plist and len(hit[1]) == len(plist):
            return hit[1]
        if hit is not None and hit[0] is plist and len(hit[1]) < len(plist):
            extra = np.fromiter((p[3] for p in plist[len(hit[1]):]), dtype=np.uint64)
            arr = np.concatenate([hit[1], extra])
        else:
            arr = np.fromiter((p[3] for p in plist), dtype=np.uint64, count=len(plist))
        self._lanes_cache[key] = (plist, arr)
        return arr

    def _push_exps(self, c: int, te: Tuple[int, ...]):
        arr, n = self._comp_arrays.get(c, (None, 0))
        if arr is None or n == arr.shape[0]:
            grown = np.zeros((max(16, 2 * n), self.L.nvars), dtype=np.int32)
            if arr is not None:
                grown[:n] = arr[:n]
            arr = grown
        arr[n] = te
        self._comp_arrays[c] = (arr, n + 1)

    def _new_pairs(self, c: int, te: Tuple[int, ...]):
        """Pairs of the new lead ``te`` with the leads of component c that
        survive criterion M, as (lcm key, partner index, any-coprime flag).

        With u_i = lead_i : te, pair (i, new) is redundant when some u_j
        properly divides u_i; equal u's share one lcm (criterion F)."""
        arr, n = self._comp_arrays.get(c, (None, 0))
        if not n:
            return []
        L = self.L
        E = arr[:n]
        T = np.asarray(te, dtype=np.int32)
        U = np.maximum(E - T, 0)
        coprime = (U == E).all(axis=1)
        deg = U @ self._weights
        same = self.by_comp[c]
        base = L.bases[c]
        out = []
        minimal = None
        for dlt in np.unique(deg):
            idx = np.nonzero(deg == dlt)[0]
            G = U[idx]
            if minimal is not None:
                hit = (minimal[None, :, :] <= G[:, None, :]).all(axis=2).any(axis=1)
                if hit.all():
                    continue
                idx, G = idx[~hit], G[~hit]
            if self._pack_vec is not None:
                keys = G.astype(np.int64) @ self._pack_vec
                _, first, inv = np.unique(keys, return_index=True, return_inverse=True)
                uniq = G[first]
            else:
                uniq, inv = np.unique(G, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            minimal = uniq if minimal is None else np.vstack([minimal, uniq])
            for gi in range(len(uniq)):
                members = idx[inv == gi]
                lx = tuple(int(a) for a in (T + uniq[gi]))
                out.append((base + L.inc(lx), same[int(members[0])], bool(coprime[members].any())))
        return out

    # insertion with Gebauer-Moeller pair update -------------------------------

    def _insert(self, v: Vector):
        L = self.L
        k = len(self.elems)
        t = v[0]
        c = L.comp(t)
        same = self.by_comp[c]
        te = L.exps(t)
        LS, LMASK, g = L.LS, L.LMASK, L.GUARD
        lanes_t = (t >> LS) & LMASK
        base = L.bases[c]
        inc = L.inc
        lead_exps = self.lead_exps
        # old pairs: criterion B (dead pairs are removed from the queue)
        leads = self.leads
        queue = self.pairs[c]
        fast = self._lanes_fit
        for deg, plist in queue.items():
            if not plist:
                continue
            if fast:
                arr = self._queue_lanes(c, deg, plist)
                gu, tu = np.uint64(g), np.uint64(lanes_t)
                sel = np.nonzero(((arr | gu) - tu) & gu == gu)[0]
                if not len(sel):
                    continue
                hits = [plist[i] for i in sel.tolist()]
            else:
                hits = [p for p in plist if ((p[3] | g) - lanes_t) & g == g]
                if not hits:
                    continue
            dead = set()
            for p in hits:
                lcm = p[0]
                if (base + inc(tuple(map(max, lead_exps[p[1]], te))) != lcm
                        and base + inc(tuple(map(max, lead_exps[p[2]], te))) != lcm):
                    dead.add(p)
            if dead:
                queue[deg] = [p for p in plist if p not in dead]
                self._lanes_cache.pop((c, deg), None)
        # criterion M on the new pairs, then criterion F + product criterion
        for lcm, i, coprime in self._new_pairs(c, te):
            deg = L.tdeg(lcm)
            if self.syzygy_degree is None or deg > self.syzygy_degree:
                self.syzygy_degree = deg
            if self.ideal and coprime:
                continue
            queue[deg].append((lcm, i, k, (lcm >> LS) & LMASK))
        self.elems.append(v)
        self.leads.append(t)
        self.lead_lanes.append(lanes_t)
        lead_exps.append(te)
        same.append(k)
        self._push_exps(c, te)
        self._num_cache.pop(c, None)

    # normal forms -------------------------------------------------------------

    def normal_form(self, v: Vector) -> Vector:
        """Full reduction; divisor choice = first element in insertion order."""
        import heapq
        live = set(v)
        heap = [-t for t in live]
        heapq.heapify(heap)
        out = []
        while heap:
            t = -heapq.heappop(heap)
            if t not in live:
                continue
            idx = self.find_divisor(t)
            if idx < 0:
                live.discard(t)
                out.append(t)
                continue
            inc = t - self.leads[idx]
            for k in self.elems[idx]:
                k += inc
                if k in live:
                    live.discard(k)
                else:
                    live.add(k)
                    heapq.heappush(heap, -k)
        return tuple(out)

    def reduced_basis(self) -> List[Vector]:
        """Reduced GB (lead terms fixed, tails fully reduced), sorted by lead."""
        out = []
        for i in sorted(range(len(self.elems)), key=lambda i: self.leads[i]):
            v = self.elems[i]
            # leads are minimal, so no lead divides a tail term of its own element
            out.append((v[0],) + self.normal_form(v[1:]))
        return out

    # Hilbert data ---------------------------------------------------------------

    def lead_exps_by_comp(self) -> Dict[int, List[Tuple[int, ...]]]:
        out: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
        for t in self.leads:
            out[self.L.comp(t)].append(self.L.exps(t))
        return out

    def _numerator(self, c: int) -> Tuple[int, ...]:
        hit = self._num_cache.get(c)
        if hit is None or hit[0] != len(self.by_comp.get(c, ())):
            lst = self.by_comp.get(c, [])
            num = hilbert.hilbert_numerator([self.L.exps(self.leads[i]) for i in lst], self.L.weights)
            hit = (len(lst), num)
            self._num_cache[c] = hit
        return hit[1]

    def submodule_dim(self, d: int) -> int:
        """dim_k of the degree-d piece of the submodule (GB must cover degree d)."""
        L = self.L
        total = 0
        for c in list(self.by_comp):
            if not self.by_comp[c]:
                continue
            k = d - L.twists[c]
            if k < 0:
                continue
            free = hilbert.monomial_count(L.weights, k)
            total += free - hilbert.hilbert_from_numerator(self._numerator(c), L.weights, k)
        return total

    def quotient_dim(self, d: int) -> int:
        return self.L.free_dim(d) - self.submodule_dim(d)

    def nonstandard_terms(self, d: int) -> set:
        """Terms of degree d lying in the lead-term module."""
        L = self.L
        out = set()
        for t in self.leads:
            k = d - L.tdeg(t)
            if k < 0:
                continue
            out.update(t + inc for _, inc in L.monos(k))
        return out

    def standard_terms(self, d: int) -> List[int]:
        ns = self.nonstandard_terms(d)
        return [t for t in self.L.terms_of_degree(d) if t not in ns]

    def contains(self, v: Vector) -> bool:
        return not self.normal_form(v)

    def __len__(self) -> int:
        return len(self.elems)


def groebner(layout: Layout, vecs: Iterable[Vector]) -> GB:
    gb = GB(layout)
    gb.add_generators(vecs)
    return gb.compute()


def minimal_generators(layout: Layout, vecs: Sequence[Vector], base: Sequence[Vector] = ()) -> List[int]:
    """Indices of a minimal generating subset of vecs modulo the span of ``base``.

    Inputs are scanned degree by degree in the given order; an element is kept
    when it is not in (lower-degree part) + (base) + (earlier kept elements).
    """
    gb = GB(layout)
    gb.add_generators(base, tags=[None] * len(base))
    gb.add_generators(vecs, tags=list(range(len(vecs))))
    gb.compute()
    return sorted(t for t in gb.minimal_tags if t is not None)


def kernel(src: Layout, tgt: Layout, images: Sequence[Vector],
           modulo: Sequence[Vector] = (), known: Sequence[Vector] = (),
           max_degree: Optional[int] = None, progress=None) -> Tuple[List[Vector], GB]:
    """Minimal generators of {v in F : phi(v) in N} modulo the span of ``known``.

    ``images[j]`` is phi(e_j) in the target layout; ``modulo`` generates N.
    ``known`` lists kernel elements already accounted for (e.g. q*F when
    working over a hypersurface ring).  Returns (new generators, GB of the
    whole kernel up to the degree bound).

    Degree bound: syzygies of (phi(e_j), N-gens) live in degrees at most the
    largest S-pair degree of a Groebner basis of their span, or the largest
    generator degree.
    """
    img = GB(tgt)
    img.add_generators([v for v in images if v])
    img.add_generators([v for v in modulo if v])
    img.compute()
    nmod = GB(tgt)
    nmod.add_generators([v for v in modulo if v])
    nmod.compute()
    degs = [src.tdeg(src.bases[j]) for j in range(len(src.twists))]
    bound_candidates = [d for d in (img.syzygy_degree, img.max_input_degree) if d is not None]
    bound_candidates += degs
    bound = max(bound_candidates) if bound_candidates else 0
    if max_degree is not None:
        bound = min(bound, max_degree)
    W = GB(src)
    W.add_generators(known, tags=[None] * len(known))
    found: List[Vector] = []
    if not degs:
        return found, W.compute()
    d = min(degs)
    while d <= bound:
        W.compute(d)
        dim_k = src.free_dim(d) - img.submodule_dim(d) + nmod.submodule_dim(d)
        dim_w = len(W.nonstandard_terms(d))
        need = dim_k - dim_w
        if need < 0:
            raise EngineError(f"kernel bookkeeping failed at degree {d}: {dim_k} < {dim_w}")
        if need:
            vecs = _kernel_piece(src, tgt, images, nmod, W, d)
            if len(vecs) != need:
                raise EngineError(f"degree {d}: expected {need} new kernel elements, found {len(vecs)}")
            W.append_basis(vecs)
            found.extend(vecs)
            if progress:
                progress(d, len(vecs))
        d += 1
    return found, W


def _pack_positions(ps: List[int]) -> int:
    """Bit vector with the given (distinct) bits set."""
    x = 0
    for p in ps:
        x |= 1 << p
    return x


def _kernel_piece(src: Layout, tgt: Layout, images: Sequence[Vector], nmod: GB, W: GB, d: int) -> List[Vector]:
    """Kernel vectors at degree d supported on W-standard terms, echelonised."""
    std = W.standard_terms(d)
    rows = []
    for t in std:
        c = src.comp(t)
        inc = t - src.bases[c]
        im = images[c]
        rows.append(tuple(k + inc for k in im) if im else ())
    # reducers for N in the target
    colset = set()
    for r in rows:
        colset.update(r)
    reducers: Dict[int, Vector] = {}
    stack = list(colset)
    seen = set()
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        idx = nmod.find_divisor(t)
        if idx >= 0:
            inc = t - nmod.leads[idx]
            r = tuple(k + inc for k in nmod.elems[idx])
            reducers[t] = r
            stack.extend(r[1:])
    cols = sorted(seen)
    pos = {t: i for i, t in enumerate(cols)}

    def pack(v):
        return _pack_positions([pos[t] for t in v])

    piv: Dict[int, Tuple[int, int]] = {pos[t]: (pack(r), 0) for t, r in reducers.items()}
    combos = []
    # process rows from the smallest term up so combinations have small leads
    nrows = len(rows)
    for i in range(nrows):
        x = pack(rows[i])
        comb = 1 << i
        while x:
            b = x.bit_length() - 1
            hit = piv.get(b)
            if hit is None:
                piv[b] = (x, comb)
                break
            x ^= hit[0]
            comb ^= hit[1]
        if not x:
            combos.append(comb)
    # std is ascending?  map row index -> term; echelonise combos by term order
    order = sorted(range(nrows), key=lambda i: std[i])
    rank_of = {i: r for r, i in enumerate(order)}
    out_rows = []
    from .gf2 import Echelon
    ech = Echelon()
    for comb in combos:
        y = 0
        for i in bits(comb):
            y |= 1 << rank_of[i]
        ech.add(y)
    for b in sorted(ech.pivots):
        y = ech.full_reduce(ech.pivots[b] ^ (1 << b)) | (1 << b)
        out_rows.append(tuple(std[order[i]] for i in bits(y)))
    return out_rows
