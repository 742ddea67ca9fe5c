"""Brute-force oracles shared by the tests."""

from __future__ import annotations

from tango.gf2 import rank
from tango.ring import GradedRing, Polynomial


def poly_ring(names: str, char: int = 2) -> GradedRing:
    return GradedRing(names.split(), char)


def lift(p: Polynomial) -> Polynomial:
    return Polynomial(p.ring.ambient, p.terms)


def _row(mons, g: Polynomial, m) -> int:
    x = 0
    for e, c in g.terms.items():
        if c % 2:
            x ^= 1 << mons[tuple(a + b for a, b in zip(e, m))]
    return x


def ideal_dim_oracle(ring: GradedRing, gens, d: int) -> int:
    """dim_k I_d by brute force: rank of all m*g with deg m = d - deg g (GF(2) only).

    For a quotient ring the multiples of the relation are counted out.
    """
    amb = ring.ambient
    mons = {e: k for k, e in enumerate(amb.monomials_of_degree(d))}
    extra = [ring.relation] if ring.relation is not None else []
    rows = []
    for g in [lift(g) for g in gens] + extra:
        if g.is_zero() or g.degree() > d:
            continue
        rows.extend(_row(mons, g, m) for m in amb.monomials_of_degree(d - g.degree()))
    r = rank(rows)
    if extra and extra[0].degree() <= d:
        q = extra[0]
        r -= rank([_row(mons, q, m) for m in amb.monomials_of_degree(d - q.degree())])
    return r
