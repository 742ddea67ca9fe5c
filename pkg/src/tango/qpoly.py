"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, List, Sequence


class QPoly:
    """Immutable polynomial in one variable; ``coeffs[k]`` multiplies t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def t(cls) -> "QPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, a) -> "QPoly":
        return cls([a])

    @classmethod
    def binomial(cls, shift: int, k: int) -> "QPoly":
        """binom(t + shift, k) as a polynomial in t."""
        out = cls([1])
        for i in range(k):
            out = out * cls([shift - i, 1])
        return out * Fraction(1, factorial(k))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _lift(self, other) -> "QPoly":
        return other if isinstance(other, QPoly) else QPoly([other])

    def __add__(self, other) -> "QPoly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, v in enumerate(other.coeffs):
            a[i] += v
        return QPoly(a)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "QPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_linear(self, a, b) -> "QPoly":
        """p(a*t + b)."""
        out = QPoly()
        lin = QPoly([b, a])
        power = QPoly([1])
        for c in self.coeffs:
            out = out + power * c
            power = power * lin
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPoly):
            other = QPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return format_qpoly(self)


def format_qpoly(p: QPoly, var: str = "t") -> str:
    """'1/60 t^5 + 1/3 t^4 - 14' style rendering, highest degree first."""
    if not p.coeffs:
        return "0"
    parts: List[str] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a} {mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def from_values(points: Sequence[int], values: Sequence) -> QPoly:
    """Lagrange interpolation through (points[i], values[i])."""
    out = QPoly()
    for i, (xi, yi) in enumerate(zip(points, values)):
        term = QPoly([yi])
        for j, xj in enumerate(points):
            if j != i:
                term = term * QPoly([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        out = out + term
    return out
