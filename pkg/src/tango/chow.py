"""Chow rings of P^n and odd-dimensional quadrics, Chern classes and Riemann-Roch.

Rationally both rings are truncated polynomial rings Q[h]/(h^{n+1}) in the
hyperplane class h (xi on P^n, eta on Q_n), so a Chow class is stored as the
list of rational multiples of h^i.  The integral structure differs: on
Q_n (n = 2k+1) the group A^i for i > k is generated by zeta_i = h^i / 2, and
the top class h^n has degree 2.  *Coordinates* are the integers with respect
to these generators: coordinate_i = coeff_i for i <= k and 2*coeff_i beyond.

A Chern vector is therefore a rank together with a one-variable Chern
polynomial; splitting-principle operations (duals, twists, Sym^2, wedge^2,
tensor products) go through the Chern character with Newton's identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .qpoly import QPoly


class ChowError(ValueError):
    pass


# ambient spaces ----------------------------------------------------------------------


@dataclass(frozen=True)
class Ambient:
    """P^n (kind "P") or the smooth quadric Q_n in P^{n+1} (kind "Q", n odd)."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("P", "Q"):
            raise ChowError(f"unknown ambient kind {self.kind!r}")
        if self.kind == "Q" and self.n % 2 == 0:
            raise ChowError("only odd-dimensional quadrics are supported")

    @property
    def degree(self) -> int:
        """Degree of h^n."""
        return 1 if self.kind == "P" else 2

    @property
    def half(self) -> int:
        """Largest i with A^i generated by h^i itself."""
        return self.n if self.kind == "P" else (self.n - 1) // 2

    def tangent(self) -> "ChernVector":
        """Tangent bundle: Euler sequence on P^n, normal sequence on Q_n."""
        if self.kind == "P":
            return ChernVector(self, self.n, _series_pow([1, 1], self.n + 1, self.n))
        amb = _series_pow([1, 1], self.n + 2, self.n)
        return ChernVector(self, self.n, _series_div(amb, [1, 2], self.n))

    def __str__(self) -> str:
        return f"{self.kind}{self.n}"


P5 = Ambient("P", 5)
Q5 = Ambient("Q", 5)


# truncated power series with Fraction coefficients -----------------------------------


def _trunc(a: Sequence, n: int) -> List[Fraction]:
    out = [Fraction(x) for x in list(a)[: n + 1]]
    return out + [Fraction(0)] * (n + 1 - len(out))


def _series_mul(a: Sequence, b: Sequence, n: int) -> List[Fraction]:
    a, b = _trunc(a, n), _trunc(b, n)
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


def _series_pow(a: Sequence, k: int, n: int) -> List[Fraction]:
    out = _trunc([1], n)
    for _ in range(k):
        out = _series_mul(out, a, n)
    return out


def _series_inv(a: Sequence, n: int) -> List[Fraction]:
    a = _trunc(a, n)
    if a[0] == 0:
        raise ChowError("series is not invertible")
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / a[0]
    for k in range(1, n + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0]
    return out


def _series_div(a: Sequence, b: Sequence, n: int) -> List[Fraction]:
    return _series_mul(a, _series_inv(b, n), n)


def _series_exp(a: Sequence, n: int) -> List[Fraction]:
    """exp of a series without constant term."""
    a = _trunc(a, n)
    if a[0] != 0:
        raise ChowError("exp needs zero constant term")
    out = _trunc([1], n)
    term = _trunc([1], n)
    for k in range(1, n + 1):
        term = [x / k for x in _series_mul(term, a, n)]
        out = [x + y for x, y in zip(out, term)]
    return out


# Newton's identities ------------------------------------------------------------------


def power_sums(c: Sequence, n: int) -> List[Fraction]:
    """p_k = sum of k-th powers of the Chern roots, k = 0..n (p_0 unused)."""
    e = _trunc(c, n)
    p = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = Fraction((-1) ** (k - 1) * k) * e[k]
        for i in range(1, k):
            acc += (-1) ** (i - 1) * e[i] * p[k - i]
        p[k] = acc
    return p


def elementary_from_power_sums(p: Sequence, n: int) -> List[Fraction]:
    e = [Fraction(0)] * (n + 1)
    e[0] = Fraction(1)
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * p[i]
        e[k] = acc / k
    return e


# classes and Chern vectors ---------------------------------------------------------------


@dataclass(frozen=True)
class ChowClass:
    """Element of A(X) tensor Q, stored as multiples of h^i."""

    ambient: Ambient
    coeffs: Tuple[Fraction, ...]

    @classmethod
    def from_coordinates(cls, ambient: Ambient, coords: Sequence) -> "ChowClass":
        c = [Fraction(x) for x in coords]
        c = c + [Fraction(0)] * (ambient.n + 1 - len(c))
        return cls(ambient, tuple(x if i <= ambient.half else x / 2 for i, x in enumerate(c[: ambient.n + 1])))

    def coordinates(self) -> Tuple[Fraction, ...]:
        h = self.ambient.half
        return tuple(x if i <= h else 2 * x for i, x in enumerate(self.coeffs))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coordinates())

    def __mul__(self, other: "ChowClass") -> "ChowClass":
        if other.ambient != self.ambient:
            raise ChowError("classes live on different spaces")
        return ChowClass(self.ambient, tuple(_series_mul(self.coeffs, other.coeffs, self.ambient.n)))

    def __add__(self, other: "ChowClass") -> "ChowClass":
        if other.ambient != self.ambient:
            raise ChowError("classes live on different spaces")
        return ChowClass(self.ambient, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def degree(self) -> Fraction:
        """Integral of the top-degree part."""
        return self.coeffs[self.ambient.n] * self.ambient.degree


@dataclass(frozen=True)
class ChernVector:
    """A rank and a total Chern class (coefficient c_i of h^i)."""

    ambient: Ambient
    rank: int
    total: Tuple[Fraction, ...]

    def __init__(self, ambient: Ambient, rank: int, total: Sequence):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "total", tuple(_trunc(total, ambient.n)))
        if self.total[0] != 1:
            raise ChowError("c_0 must be 1")

    @classmethod
    def from_coordinates(cls, ambient: Ambient, rank: int, classes: Sequence) -> "ChernVector":
        """Chern classes c_1, c_2, ... given as integer coordinates."""
        cl = ChowClass.from_coordinates(ambient, [1, *classes])
        return cls(ambient, rank, cl.coeffs)

    @classmethod
    def line(cls, ambient: Ambient, d: int) -> "ChernVector":
        return cls(ambient, 1, [1, d])

    @classmethod
    def trivial(cls, ambient: Ambient, rank: int = 1) -> "ChernVector":
        return cls(ambient, rank, [1])

    def coordinates(self) -> Tuple[Fraction, ...]:
        """(c_1, ..., c_top) in integer coordinates, trailing zeros beyond the rank dropped."""
        c = ChowClass(self.ambient, self.total).coordinates()[1:]
        keep = max(self.rank, max((i + 1 for i, x in enumerate(c) if x), default=0))
        return tuple(c[:keep])

    def chern_character(self) -> List[Fraction]:
        p = power_sums(self.total, self.ambient.n)
        ch = [Fraction(self.rank)] + [p[k] / factorial(k) for k in range(1, self.ambient.n + 1)]
        return ch

    @classmethod
    def from_chern_character(cls, ambient: Ambient, ch: Sequence) -> "ChernVector":
        n = ambient.n
        rank = ch[0]
        if Fraction(rank).denominator != 1 or rank < 0:
            raise ChowError(f"rank {rank} is not a non-negative integer")
        p = [Fraction(0)] + [Fraction(ch[k]) * factorial(k) for k in range(1, n + 1)]
        return cls(ambient, int(rank), elementary_from_power_sums(p, n))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChernVector) and self.ambient == other.ambient
                and self.rank == other.rank and self.total == other.total)

    def __hash__(self) -> int:
        return hash((self.ambient, self.rank, self.total))

    def __repr__(self) -> str:
        coords = ", ".join(str(x) for x in self.coordinates())
        return f"ChernVector({self.ambient}, rank {self.rank}, ({coords}))"


def _check_same(a: ChernVector, b: ChernVector):
    if a.ambient != b.ambient:
        raise ChowError("Chern vectors live on different spaces")


def whitney_sum(a: ChernVector, b: ChernVector) -> ChernVector:
    _check_same(a, b)
    return ChernVector(a.ambient, a.rank + b.rank, _series_mul(a.total, b.total, a.ambient.n))


def dual(a: ChernVector) -> ChernVector:
    return ChernVector(a.ambient, a.rank, [(-1) ** i * x for i, x in enumerate(a.total)])


def twist(a: ChernVector, d: int) -> ChernVector:
    """E(d): roots shifted by d*h."""
    n = a.ambient.n
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a.total):
        if x and i <= a.rank:
            term = _series_mul([0] * i + [x], _series_pow([1, d], a.rank - i, n), n)
            out = [u + v for u, v in zip(out, term)]
    return ChernVector(a.ambient, a.rank, out)


def tensor(a: ChernVector, b: ChernVector) -> ChernVector:
    _check_same(a, b)
    ch = _series_mul(a.chern_character(), b.chern_character(), a.ambient.n)
    return ChernVector.from_chern_character(a.ambient, ch)


def _adams2(ch: Sequence) -> List[Fraction]:
    return [x * 2 ** k for k, x in enumerate(ch)]


def sym2(a: ChernVector) -> ChernVector:
    n = a.ambient.n
    ch = a.chern_character()
    sq = _series_mul(ch, ch, n)
    return ChernVector.from_chern_character(a.ambient, [(x + y) / 2 for x, y in zip(sq, _adams2(ch))])


def wedge2(a: ChernVector) -> ChernVector:
    n = a.ambient.n
    ch = a.chern_character()
    sq = _series_mul(ch, ch, n)
    return ChernVector.from_chern_character(a.ambient, [(x - y) / 2 for x, y in zip(sq, _adams2(ch))])


def pullback(a: ChernVector, target: Ambient, factor: int) -> ChernVector:
    """Pull back along a map with h_source -> factor * h_target.

    f : P^5 -> Q_5 has factor 2, pi : Q_5 -> P^5 (projection) factor 1 and
    the Frobenius factor 2.
    """
    if target.n != a.ambient.n:
        raise ChowError("pullback between spaces of different dimension")
    return ChernVector(target, a.rank, [x * factor ** i for i, x in enumerate(a.total)])


# Riemann-Roch ---------------------------------------------------------------------------


def _log_todd_coefficients(n: int) -> List[Fraction]:
    """log(x / (1 - e^{-x})) = sum b_k x^k, k = 0..n."""
    # (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
    s = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    inv = _series_inv(s, n)               # x / (1 - e^{-x})
    # log of a series with constant 1: integrate f'/f
    deriv = [inv[k + 1] * (k + 1) for k in range(n)] + [Fraction(0)]
    q = _series_mul(deriv, _series_inv(inv, n), n)
    return [Fraction(0)] + [q[k - 1] / k for k in range(1, n + 1)]


def todd_class(E: ChernVector) -> List[Fraction]:
    """td(E) = exp(sum_k b_k p_k) with p_k the Newton power sums of E's roots."""
    n = E.ambient.n
    b = _log_todd_coefficients(n)
    p = power_sums(E.total, n)
    p[0] = Fraction(E.rank)
    return _series_exp([0] + [b[k] * p[k] for k in range(1, n + 1)], n)


def hrr_chi(ambient: Ambient, E: ChernVector) -> QPoly:
    """chi(E(t)) as a polynomial in t, by Hirzebruch-Riemann-Roch."""
    if E.ambient != ambient:
        raise ChowError("Chern vector lives on another space")
    n = ambient.n
    td = todd_class(ambient.tangent())
    ch = E.chern_character()
    # ch(O(t)) = sum t^k h^k / k!, kept as polynomials in t
    chO = [QPoly([0] * k + [Fraction(1, factorial(k))]) for k in range(n + 1)]
    chE_td = _series_mul(ch, td, n)
    out = QPoly()
    for k in range(n + 1):
        out = out + chO[k] * chE_td[n - k]
    return out * ambient.degree


def line_chi(ambient: Ambient) -> QPoly:
    return hrr_chi(ambient, ChernVector.trivial(ambient))


def chern_from_hilbert(hp: QPoly, ambient: Ambient, rank: int) -> ChernVector:
    """Integral Chern classes c_1..c_rank reproducing the Hilbert polynomial.

    The coefficient of t^{n-k} in chi(E(t)) is affine in c_k once c_1..c_{k-1}
    are fixed, so the classes are found one at a time and the full
    polynomial is compared at the end.
    """
    n = ambient.n
    top = min(rank, n)
    total = [Fraction(1)] + [Fraction(0)] * n

    def coeff(tot, k):
        p = hrr_chi(ambient, ChernVector(ambient, rank, tot))
        return p.coeffs[k] if k < len(p.coeffs) else Fraction(0)

    target = list(hp.coeffs) + [Fraction(0)] * (n + 1 - len(hp.coeffs))
    for k in range(1, top + 1):
        t0 = list(total)
        t1 = list(total)
        t1[k] = Fraction(1)
        v0, v1 = coeff(t0, n - k), coeff(t1, n - k)
        if v1 == v0:
            raise ChowError(f"c_{k} is not determined by the Hilbert polynomial")
        total[k] = (target[n - k] - v0) / (v1 - v0)
    E = ChernVector(ambient, rank, total)
    if hrr_chi(ambient, E) != hp:
        raise ChowError(f"no rank-{rank} Chern vector reproduces {hp}")
    if not ChowClass(ambient, E.total).is_integral():
        raise ChowError(f"non-integral Chern classes {ChowClass(ambient, E.total).coordinates()[1:]}")
    return E


# the enumerative lemma --------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaSolution:
    a: Tuple[int, ...]     # c_i(E) in integer coordinates
    b: Tuple[int, ...]     # c_i(Q) in integer coordinates


def lemma_enumeration(n: int = 5, bound: int = 50) -> List[LemmaSolution]:
    """All integer Chern data with c(E^dual) c(Q) = 1 in A(Q_n), |c_i(E)| <= bound.

    E has rank k+1 and Q rank n-k with k = (n-1)/2; c_1(E) > 0 excludes the
    constant map.  Every (c_1, c_2, c_3) in the box is tried (vectorised over
    c_3).  With c(E^dual) = 1 - a1 h + a2 h^2 - (a3/2) h^3 the inverse series
    w satisfies W_k = 2^k w_k = 2 a1 W_{k-1} - 4 a2 W_{k-2} + 4 a3 W_{k-3},
    which stays in the integers; c(Q) = w must vanish above degree 3 and have
    integral coordinates.
    """
    if n != 5:
        raise ChowError("only n = 5 is supported")
    half = (n - 1) // 2
    a3 = np.arange(-bound, bound + 1, dtype=np.int64)
    out: List[LemmaSolution] = []
    for a1 in range(1, bound + 1):
        for a2 in range(-bound, bound + 1):
            W = [np.ones_like(a3)]
            for k in range(1, n + 1):
                acc = 2 * a1 * W[k - 1]
                if k >= 2:
                    acc = acc - 4 * a2 * W[k - 2]
                if k >= 3:
                    acc = acc + 4 * a3 * W[k - 3]
                W.append(acc)
            good = np.ones_like(a3, dtype=bool)
            for k in range(4, n + 1):
                good &= W[k] == 0
            coords = []
            for k in range(1, 4):
                num = W[k] * (1 if k <= half else 2)
                good &= num % (2 ** k) == 0
                coords.append(num)
            for idx in np.nonzero(good)[0]:
                b = tuple(int(coords[k - 1][idx]) // 2 ** k for k in range(1, 4))
                out.append(LemmaSolution((a1, a2, int(a3[idx])), b))
    return out


def lemma_family(bound: int = 50) -> List[Tuple[int, int, int]]:
    """The predicted solutions (2a, 2a^2, 2a^3) within the bound."""
    out = []
    a = 1
    while 2 * a ** 3 <= bound:
        out.append((2 * a, 2 * a * a, 2 * a ** 3))
        a += 1
    return out


def satisfies_lemma_relation(a: Sequence[int], n: int = 5) -> bool:
    """c(E^dual) * c(Q) = 1 with c(Q) forced as the inverse: Q integral of rank n-k."""
    amb = Ambient("Q", n)
    E = ChernVector.from_coordinates(amb, 3, a)
    inv = _series_inv(dual(E).total, n)
    if any(inv[k] for k in range(4, n + 1)):
        return False
    return ChowClass(amb, inv).is_integral()


def chi_of(ambient: Ambient, rank: int, classes: Iterable[int]) -> QPoly:
    return hrr_chi(ambient, ChernVector.from_coordinates(ambient, rank, list(classes)))
