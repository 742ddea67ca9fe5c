"""Coefficients, graded polynomial rings, quotient by one relation, ring maps.

Polynomials are immutable sparse dictionaries ``{exponent tuple: coefficient}``.
Coefficients live in GF(p) (plain ints reduced mod p) or, when the ring has
characteristic 0, in :class:`fractions.Fraction`.  All rings are standard
graded unless explicit variable weights are given.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Exps = Tuple[int, ...]


class RingError(ValueError):
    pass


def grevlex_key(exps: Exps, weights: Optional[Sequence[int]] = None):
    """Sort key for graded reverse lexicographic order, x0 > x1 > ... ."""
    if weights is None:
        deg = sum(exps)
    else:
        deg = sum(e * w for e, w in zip(exps, weights))
    return (deg, tuple(-e for e in reversed(exps)))


class GradedRing:
    """k[x0..xn] or k[x0..xn]/(rel) with k = GF(p) or Q.

    ``characteristic`` 0 means exact rationals.  The quotient relation, if
    any, must be homogeneous; elements are kept in normal form with respect
    to the singleton Groebner basis {rel}.
    """

    def __init__(self, variables: Sequence[str], characteristic: int = 2,
                 weights: Optional[Sequence[int]] = None, name: str = ""):
        if characteristic < 0 or characteristic == 1:
            raise RingError(f"bad characteristic {characteristic}")
        if characteristic > 1 and any(characteristic % d == 0 for d in range(2, int(characteristic ** 0.5) + 1)):
            raise RingError(f"{characteristic} is not prime")
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        self.characteristic = characteristic
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w <= 0 for w in self.weights):
            raise RingError("weights must be positive, one per variable")
        self.relation: Optional[Polynomial] = None
        self.ambient: GradedRing = self
        self.name = name

    # construction helpers -------------------------------------------------

    def quotient(self, relation: "Polynomial", name: str = "") -> "GradedRing":
        if relation.ring is not self:
            raise RingError("relation must live in this ring")
        if relation.is_zero() or not relation.is_homogeneous():
            raise RingError("quotient relation must be nonzero and homogeneous")
        if self.relation is not None:
            raise RingError("only a single quotient relation is supported")
        q = GradedRing(self.variables, self.characteristic, self.weights, name=name)
        q.ambient = self
        q.relation = Polynomial(q, relation.terms)
        q._rel_lead = max(relation.terms, key=lambda e: grevlex_key(e, self.weights))
        return q

    @property
    def is_standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def same_as(self, other: "GradedRing") -> bool:
        if self is other:
            return True
        return (self.variables == other.variables
                and self.characteristic == other.characteristic
                and self.weights == other.weights
                and ((self.relation is None and other.relation is None)
                     or (self.relation is not None and other.relation is not None
                         and self.relation.terms == other.relation.terms)))

    def __repr__(self) -> str:
        k = "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"
        s = f"{k}[{', '.join(self.variables)}]"
        if self.relation is not None:
            s += f"/({self.relation})"
        return s

    # coefficients ---------------------------------------------------------

    def coerce(self, c):
        if self.characteristic == 0:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % self.characteristic == 0:
                raise RingError(f"{c} has no image in GF({self.characteristic})")
            return (c.numerator * pow(c.denominator, -1, self.characteristic)) % self.characteristic
        return int(c) % self.characteristic

    def inverse(self, c):
        if self.characteristic == 0:
            return 1 / Fraction(c)
        return pow(int(c), -1, self.characteristic)

    # elements -------------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.coerce(1)})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.coerce(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Exps, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): self.coerce(coeff)})

    def from_terms(self, terms: Mapping[Exps, object]) -> "Polynomial":
        out: Dict[Exps, object] = {}
        for e, c in terms.items():
            c = self.coerce(c)
            if c:
                out[tuple(e)] = c
        return self._reduce(out)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def monomials_of_degree(self, d: int):
        """Exponent vectors of (weighted) degree d, descending grevlex."""
        return list(_monomials_of_degree(self.weights, d))

    def degree_of(self, exps: Exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def basis_dimension(self, d: int) -> int:
        """dim_k of the degree-d piece of the ring."""
        if self.relation is None:
            return len(_monomials_of_degree(self.weights, d))
        lead = self._rel_lead
        return sum(1 for e in _monomials_of_degree(self.weights, d)
                   if not all(a >= b for a, b in zip(e, lead)))

    # quotient normal form ---------------------------------------------------

    def _reduce(self, terms: Dict[Exps, object]) -> "Polynomial":
        if self.relation is None:
            return Polynomial(self, terms)
        lead = self._rel_lead
        rel = self.relation.terms
        lc_inv = self.inverse(rel[lead])
        p = self.characteristic
        terms = dict(terms)
        while True:
            hits = [e for e in terms if all(a >= b for a, b in zip(e, lead))]
            if not hits:
                break
            e = max(hits, key=lambda x: grevlex_key(x, self.weights))
            c = terms[e] * lc_inv
            shift = tuple(a - b for a, b in zip(e, lead))
            for re_, rc in rel.items():
                m = tuple(a + b for a, b in zip(shift, re_))
                v = terms.get(m, 0) - c * rc
                if p:
                    v %= p
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return Polynomial(self, terms)


_MONO_CACHE: Dict[Tuple[Tuple[int, ...], int], Tuple[Exps, ...]] = {}


def _monomials_of_degree(weights: Tuple[int, ...], d: int) -> Tuple[Exps, ...]:
    key = (tuple(weights), d)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    n = len(weights)
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(acc + [left // weights[i]]))
            return
        for e in range(left // weights[i], -1, -1):
            rec(i + 1, left - e * weights[i], acc + [e])

    if d >= 0 and n:
        rec(0, d, [])
    elif d == 0:
        out.append(())
    out.sort(key=lambda e: grevlex_key(e, weights), reverse=True)
    res = tuple(out)
    _MONO_CACHE[key] = res
    return res


class Polynomial:
    """Immutable sparse polynomial; arithmetic stays inside one ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping[Exps, object]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    # predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            raise RingError("zero polynomial has no degree")
        return max(self.ring.degree_of(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree_of(e) for e in self.terms}
        return len(degs) <= 1

    def leading_exps(self) -> Exps:
        return max(self.terms, key=lambda e: grevlex_key(e, self.ring.weights))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0], self.ring.weights), reverse=True)

    # arithmetic ------------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError("operand is not a Polynomial")
        if not self.ring.same_as(other.ring):
            raise RingError(f"mixed rings: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            c = self.ring.coerce(other)
            return Polynomial(self.ring, {(0,) * self.ring.nvars: c} if c else {})
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        p = self.ring.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.ring.characteristic
        return Polynomial(self.ring, {e: ((-c) % p if p else -c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._lift(other)
        p = self.ring.characteristic
        out: Dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(m, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    out[m] = v
                else:
                    del out[m]
        return self.ring._reduce(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise RingError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_as(other.ring) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def substitute(self, images: Sequence["Polynomial"], target: GradedRing) -> "Polynomial":
        """Evaluate at ``images`` (one per variable) in ``target``."""
        out = target.zero()
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = target.one() * target.coerce(c)
            for i, k in enumerate(e):
                if k:
                    pw = powers.get((i, k))
                    if pw is None:
                        pw = images[i] ** k
                        powers[(i, k)] = pw
                    term = term * pw
            out = out + term
        return out

    def __repr__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    names = p.ring.variables
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def parse_polynomial(ring: GradedRing, text: str) -> Polynomial:
    """Parse '+', '-', '*', '^' (or '**'), integers, parentheses, variables."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise RingError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2)))
        else:
            tokens.append(("op", "^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take():
        nonlocal idx
        t = peek()
        idx += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        val = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() == ("op", "*"):
            take()
            val = val * factor()
        return val

    def factor():
        val = atom()
        if peek() == ("op", "^"):
            take()
            kind, n = take()
            if kind != "num":
                raise RingError(f"exponent must be an integer in {text!r}")
            val = val ** n
        return val

    def atom():
        kind, v = take()
        if kind == "num":
            return ring.one() * v
        if kind == "var":
            if v not in ring.variables:
                raise RingError(f"unknown variable {v!r} in {text!r}")
            return ring.var(v)
        if (kind, v) == ("op", "("):
            val = expr()
            if take() != ("op", ")"):
                raise RingError(f"unbalanced parentheses in {text!r}")
            return val
        raise RingError(f"unexpected token {v!r} in {text!r}")

    if not tokens:
        return ring.zero()
    result = expr()
    if idx != len(tokens):
        raise RingError(f"trailing input in {text!r}")
    return result


class RingMap:
    """Graded ring homomorphism given by images of the source variables.

    A source element of degree d lands in degree ``scale * d``.
    """

    def __init__(self, source: GradedRing, target: GradedRing,
                 images: Sequence[Polynomial], scale: int = 1, name: str = ""):
        if len(images) != source.nvars:
            raise RingError(f"need {source.nvars} images, got {len(images)}")
        if scale <= 0:
            raise RingError("degree scaling must be a positive integer")
        if source.characteristic != target.characteristic:
            raise RingError("source and target must share the coefficient field")
        self.source = source
        self.target = target
        normalised = []
        for im in images:
            if not (im.ring.same_as(target) or im.ring.same_as(target.ambient)):
                raise RingError(f"image {im} does not live in the target ring")
            normalised.append(target._reduce(dict(im.terms)))
        self.images = tuple(normalised)
        self.scale = scale
        self.name = name

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.apply(p)

    def apply(self, p: Polynomial) -> Polynomial:
        if not p.ring.same_as(self.source) and not p.ring.same_as(self.source.ambient):
            raise RingError(f"{p} is not in the source ring {self.source}")
        return p.substitute(self.images, self.target)

    def validate(self) -> Tuple[bool, str]:
        """(ok, diagnostic): homogeneity of images and the source relation."""
        for i, im in enumerate(self.images):
            if im.is_zero():
                continue
            if not im.is_homogeneous():
                return False, f"image of {self.source.variables[i]} is not homogeneous"
            want = self.scale * self.source.weights[i]
            if im.degree() != want:
                return False, (f"image of {self.source.variables[i]} has degree {im.degree()}, "
                               f"expected {want}")
        if self.source.relation is not None:
            amb = Polynomial(self.source.ambient, self.source.relation.terms)
            img = amb.substitute(self.images, self.target)
            if not img.is_zero():
                return False, f"relation maps to {img}, not 0"
        return True, "ok"

    def compose(self, first: "RingMap") -> "RingMap":
        """self o first (apply ``first`` then ``self``)."""
        if not first.target.same_as(self.source):
            raise RingError("maps are not composable")
        return RingMap(first.source, self.target, [self.apply(im) for im in first.images],
                       first.scale * self.scale)


def validate_ring_map(m: RingMap) -> bool:
    return m.validate()[0]


def apply_ring_map(m: RingMap, p: Polynomial) -> Polynomial:
    return m.apply(p)


def identity_map(ring: GradedRing) -> RingMap:
    return RingMap(ring, ring, ring.gens(), 1)


# exterior algebra ---------------------------------------------------------


class ExteriorAlgebra:
    """Exterior algebra over GF(2); a monomial is a bitmask of variables."""

    def __init__(self, variables: Sequence[str] = tuple(f"e{i}" for i in range(6))):
        self.variables = tuple(variables)
        self.nvars = len(self.variables)

    def element(self, monomials: Iterable[int]) -> "ExteriorElement":
        out = set()
        for m in monomials:
            out ^= {m}
        return ExteriorElement(self, frozenset(out))

    def gen(self, i: int) -> "ExteriorElement":
        return ExteriorElement(self, frozenset({1 << i}))

    def one(self) -> "ExteriorElement":
        return ExteriorElement(self, frozenset({0}))

    def zero(self) -> "ExteriorElement":
        return ExteriorElement(self, frozenset())

    def basis(self, k: int):
        return [sum(1 << i for i in c) for c in combinations(range(self.nvars), k)]

    def parse(self, text: str) -> "ExteriorElement":
        text = text.strip()
        if text in ("0", ""):
            return self.zero()
        masks = []
        for part in text.split("+"):
            part = part.strip()
            if part == "1":
                masks.append(0)
                continue
            names = re.findall(r"[A-Za-z_]+\d*", part)
            mask = 0
            for nm in names:
                if nm not in self.variables:
                    raise RingError(f"unknown exterior variable {nm!r}")
                bit = 1 << self.variables.index(nm)
                if mask & bit:
                    mask = None
                    break
                mask |= bit
            if mask is not None:
                masks.append(mask)
        return self.element(masks)


class ExteriorElement:
    __slots__ = ("algebra", "monomials")

    def __init__(self, algebra: ExteriorAlgebra, monomials: frozenset):
        self.algebra = algebra
        self.monomials = monomials

    def degrees(self):
        return {bin(m).count("1") for m in self.monomials}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise RingError("element is zero or not homogeneous")
        return degs.pop()

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        return ExteriorElement(self.algebra, self.monomials ^ other.monomials)

    def __mul__(self, other: "ExteriorElement") -> "ExteriorElement":
        out = set()
        for a in self.monomials:
            for b in other.monomials:
                if not a & b:
                    out ^= {a | b}
        return ExteriorElement(self.algebra, frozenset(out))

    def __eq__(self, other) -> bool:
        return isinstance(other, ExteriorElement) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials

    def __repr__(self) -> str:
        if not self.monomials:
            return "0"
        names = self.algebra.variables
        parts = []
        for m in sorted(self.monomials):
            parts.append("".join(names[i] for i in range(self.algebra.nvars) if m >> i & 1) or "1")
        return "+".join(parts)
