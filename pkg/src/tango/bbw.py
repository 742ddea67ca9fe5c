"""Borel-Bott-Weil for G2-homogeneous bundles on Q_5 = G2/P(alpha_1), characteristic 0.

Weights are written a*l1 + b*l2 in the fundamental-weight basis with
alpha_1 the short simple root.  The invariant form is normalised so that
(alpha_1, alpha_1) = 2, (alpha_2, alpha_2) = 6, which gives

    (l1, l1) = 2,  (l1, l2) = 3,  (l2, l2) = 6.

Dictionary used for bundles on Q_5: O(1) <-> l1, and the Cayley bundle C(2)
has highest weight l2, so C(t) <-> l2 + (t-2) l1 and Sym^2 C(t) <->
2 l2 + (t-4) l1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

GRAM = ((2, 3), (3, 6))


class BBWError(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    a: int
    b: int

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.a - other.a, self.b - other.b)

    def __mul__(self, k: int) -> "Weight":
        return Weight(k * self.a, k * self.b)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return self.a >= 0 and self.b >= 0

    def __str__(self) -> str:
        return f"{self.a}l1{'+' if self.b >= 0 else '-'}{abs(self.b)}l2"


L1 = Weight(1, 0)
L2 = Weight(0, 1)
RHO = Weight(1, 1)
ALPHA1 = Weight(2, -1)
ALPHA2 = Weight(-3, 2)


def pairing(x: Weight, y: Weight) -> int:
    return (x.a * y.a * GRAM[0][0] + (x.a * y.b + x.b * y.a) * GRAM[0][1]
            + x.b * y.b * GRAM[1][1])


def _positive_roots() -> Tuple[Weight, ...]:
    # alpha1, alpha2, a1+a2, 2a1+a2, 3a1+a2, 3a1+2a2
    coeffs = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    return tuple(ALPHA1 * i + ALPHA2 * j for i, j in coeffs)


POSITIVE_ROOTS = _positive_roots()


def reflect(w: Weight, i: int) -> Weight:
    """Simple reflection s_i (i = 1, 2) in the fundamental-weight basis."""
    if i == 1:
        return Weight(-w.a, w.b + w.a)
    if i == 2:
        return Weight(w.a + 3 * w.b, -w.b)
    raise BBWError(f"no simple reflection s_{i}")


def weyl_group() -> List[Tuple[int, ...]]:
    """Reduced words of the 12 elements, found by breadth-first search on rho."""
    seen = {RHO: ()}
    frontier = [RHO]
    while frontier:
        nxt = []
        for w in frontier:
            for i in (1, 2):
                v = reflect(w, i)
                if v not in seen:
                    seen[v] = (i,) + seen[w]
                    nxt.append(v)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (len(s), s))


def apply_word(word: Sequence[int], w: Weight) -> Weight:
    for i in reversed(word):
        w = reflect(w, i)
    return w


def weyl_dimension(w: Weight) -> int:
    """Dimension of the irreducible G2-module of highest weight w."""
    if not w.is_dominant():
        raise BBWError(f"{w} is not dominant")
    num = Fraction(1)
    for r in POSITIVE_ROOTS:
        num *= Fraction(pairing(w + RHO, r), pairing(RHO, r))
    if num.denominator != 1:
        raise BBWError("Weyl dimension formula gave a fraction")
    return int(num)


def is_singular(w: Weight) -> bool:
    """w lies on a wall: orthogonal to some root."""
    return any(pairing(w, r) == 0 for r in POSITIVE_ROOTS)


def to_dominant(w: Weight) -> Tuple[Weight, int]:
    """Reflect a regular weight into the dominant chamber; return (image, length)."""
    steps = 0
    while not w.is_dominant():
        w = reflect(w, 1) if w.a < 0 else reflect(w, 2)
        steps += 1
        if steps > 6:
            raise BBWError("more reflections than the longest Weyl element")
    return w, steps


@dataclass(frozen=True)
class BBWResult:
    degree: Optional[int]       # None when the shifted weight is singular
    dimension: int

    @property
    def singular(self) -> bool:
        return self.degree is None

    def h(self, i: int) -> int:
        return self.dimension if i == self.degree else 0


def bbw_cohomology(w: Weight, t: int = 0) -> BBWResult:
    """Cohomology of the irreducible homogeneous bundle of highest weight w, twisted by O(t)."""
    shifted = w + L1 * t + RHO
    if is_singular(shifted):
        return BBWResult(None, 0)
    dom, length = to_dominant(shifted)
    return BBWResult(length, weyl_dimension(dom - RHO))


def cayley_weight(t: int = 0) -> Weight:
    """C(t)."""
    return L2 + L1 * (t - 2)


def sym2_cayley_weight(t: int = 0) -> Weight:
    """Sym^2 C(t)."""
    return L2 * 2 + L1 * (t - 4)


def chi_crosscheck(w: Weight, t: int) -> int:
    """(-1)^i dim H^i from BBW (0 for singular weights)."""
    r = bbw_cohomology(w, t)
    if r.singular:
        return 0
    return (-1) ** r.degree * r.dimension


def bbw_table(w: Weight, twists: Sequence[int]) -> List[Tuple[int, Optional[int], int]]:
    """Rows (t, i, dim) for the CLI."""
    out = []
    for t in twists:
        r = bbw_cohomology(w, t)
        out.append((t, r.degree, r.dimension))
    return out


def all_reduced_words_agree(w: Weight) -> bool:
    """Every Weyl element mapping w to the dominant chamber has the same length."""
    hits = set()
    for word in weyl_group():
        v = apply_word(word, w)
        if v.is_dominant():
            hits.add((v, len(word)))
    return len(hits) == 1
