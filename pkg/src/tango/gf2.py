"""Bit-packed GF(2) linear algebra on Python ints (bit j = column j)."""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np


def bits(x: int) -> List[int]:
    """Positions of set bits, descending."""
    if not x:
        return []
    nbits = x.bit_length()
    if nbits > 512:
        raw = np.frombuffer(x.to_bytes((nbits + 7) // 8, "little"), dtype=np.uint8)
        pos = np.flatnonzero(np.unpackbits(raw, bitorder="little"))
        return pos[::-1].tolist()
    s = bin(x)
    n = len(s) - 3
    return [n - i for i, ch in enumerate(s[2:]) if ch == "1"]


def pack(positions: Iterable[int]) -> int:
    x = 0
    for p in positions:
        x ^= 1 << p
    return x


class Echelon:
    """Incremental row echelon form keyed by leading (highest) bit."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: Dict[int, int] = {}

    def reduce(self, x: int) -> int:
        piv = self.pivots
        while x:
            p = piv.get(x.bit_length() - 1)
            if p is None:
                return x
            x ^= p
        return 0

    def full_reduce(self, x: int) -> int:
        piv = self.pivots
        out = 0
        while x:
            b = x.bit_length() - 1
            p = piv.get(b)
            if p is None:
                out |= 1 << b
                x ^= 1 << b
            else:
                x ^= p
        return out

    def add(self, x: int) -> bool:
        x = self.reduce(x)
        if x:
            self.pivots[x.bit_length() - 1] = x
            return True
        return False

    def __len__(self) -> int:
        return len(self.pivots)

    def __contains__(self, x: int) -> bool:
        return self.reduce(x) == 0


def rank(rows: Sequence[int]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def nullspace(rows: Sequence[int]) -> List[int]:
    """Basis of {c : sum_i c_i rows[i] = 0}; each vector packs row indices."""
    piv: Dict[int, Tuple[int, int]] = {}
    out = []
    for i, r in enumerate(rows):
        x, comb = r, 1 << i
        while x:
            b = x.bit_length() - 1
            hit = piv.get(b)
            if hit is None:
                piv[b] = (x, comb)
                break
            x ^= hit[0]
            comb ^= hit[1]
        if not x:
            out.append(comb)
    return out


def solve(rows: Sequence[int], target: int):
    """Some c with sum c_i rows[i] = target, or None."""
    piv: Dict[int, Tuple[int, int]] = {}
    for i, r in enumerate(rows):
        x, comb = r, 1 << i
        while x:
            b = x.bit_length() - 1
            hit = piv.get(b)
            if hit is None:
                piv[b] = (x, comb)
                break
            x ^= hit[0]
            comb ^= hit[1]
    x, comb = target, 0
    while x:
        hit = piv.get(x.bit_length() - 1)
        if hit is None:
            return None
        x ^= hit[0]
        comb ^= hit[1]
    return comb
