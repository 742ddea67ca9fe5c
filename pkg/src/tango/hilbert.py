"""Hilbert series numerators of monomial ideals (pivot recursion)."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

import numpy as np

Exps = Tuple[int, ...]


def _poly_add(a: List[int], b: List[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return out


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a: List[int], k: int) -> List[int]:
    return [0] * k + list(a)


def _minimalize(gens) -> Tuple[Exps, ...]:
    gens = sorted(set(gens), key=sum)
    if len(gens) > 48:
        return _minimalize_np(gens)
    kept: List[Exps] = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


def _minimalize_np(gens: List[Exps]) -> Tuple[Exps, ...]:
    """Vectorised divisibility sweep for large generator sets (distinct, degree-sorted)."""
    A = np.asarray(gens, dtype=np.int32)
    m = len(gens)
    redundant = np.zeros(m, dtype=bool)
    step = max(1, 2_000_000 // max(1, m * A.shape[1]))
    for lo in range(0, m, step):
        blk = A[lo:lo + step]
        # div[a, b]: gens[b] divides blk[a]
        div = (A[None, :, :] <= blk[:, None, :]).all(axis=2)
        idx = np.arange(lo, lo + len(blk))
        div[np.arange(len(blk)), idx] = False
        redundant[lo:lo + len(blk)] = div.any(axis=1)
    return tuple(sorted(g for g, r in zip(gens, redundant) if not r))


def _deg(e: Exps, w: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(e, w))


@lru_cache(maxsize=200000)
def _numerator(gens: Tuple[Exps, ...], weights: Tuple[int, ...]) -> Tuple[int, ...]:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    coprime = True
    seen = set()
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = _deg(g, weights)
            f = [0] * (d + 1)
            f[0] = 1
            f[d] -= 1
            out = _poly_mul(out, f)
        return tuple(out)
    counts: Dict[int, int] = {}
    for g, s in zip(gens, supports):
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(sorted(counts), key=lambda i: counts[i])
    # exponents of mixed generators only: a pure power of ``var`` would make
    # the pivot redundant and stall the recursion
    exps = sorted(g[var] for g, s in zip(gens, supports) if g[var] and len(s) > 1)
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(len(weights)))
    plus = _minimalize(gens + (pivot,))
    colon = _minimalize(tuple(tuple(max(0, a - e) if i == var else a for i, a in enumerate(g)) for g in gens))
    n1 = list(_numerator(plus, weights))
    n2 = _shift(list(_numerator(colon, weights)), e * weights[var])
    return tuple(_poly_add(n1, n2))


def hilbert_numerator(gens, weights: Sequence[int]) -> Tuple[int, ...]:
    """Numerator N(t) of the Hilbert series N(t)/prod(1 - t^w_i) of S/J."""
    res = list(_numerator(_minimalize(tuple(tuple(g) for g in gens)), tuple(weights)))
    while len(res) > 1 and res[-1] == 0:
        res.pop()
    return tuple(res)


_COUNT_CACHE: Dict[Tuple[Tuple[int, ...], int], int] = {}


def monomial_count(weights: Sequence[int], d: int) -> int:
    """Number of monomials of weighted degree d."""
    if d < 0:
        return 0
    weights = tuple(weights)
    n = len(weights)
    if all(w == 1 for w in weights):
        return comb(d + n - 1, n - 1) if n else int(d == 0)
    key = (weights, d)
    hit = _COUNT_CACHE.get(key)
    if hit is None:
        ways = [1] + [0] * d
        for w in weights:
            for j in range(w, d + 1):
                ways[j] += ways[j - w]
        hit = ways[d]
        _COUNT_CACHE[key] = hit
    return hit


def hilbert_from_numerator(num: Sequence[int], weights: Sequence[int], d: int) -> int:
    return sum(c * monomial_count(weights, d - k) for k, c in enumerate(num) if c)


def quotient_hilbert_function(gens, weights: Sequence[int], d: int) -> int:
    """dim_k (S/J)_d for the monomial ideal J generated by ``gens``."""
    return hilbert_from_numerator(hilbert_numerator(gens, weights), weights, d)
