from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tango.gf2 import Echelon, bits, nullspace, pack, rank, solve


def dense_rank(rows, ncols):
    """Oracle: Gaussian elimination on a numpy 0/1 matrix."""
    M = np.array([[(r >> j) & 1 for j in range(ncols)] for r in rows], dtype=np.uint8).reshape(len(rows), ncols)
    r = 0
    for c in range(ncols):
        hit = [i for i in range(r, M.shape[0]) if M[i, c]]
        if not hit:
            continue
        M[[r, hit[0]]] = M[[hit[0], r]]
        for i in range(M.shape[0]):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
    return r


rows_strategy = st.lists(st.integers(0, 2 ** 40 - 1), min_size=0, max_size=25)


@given(rows_strategy)
@settings(max_examples=80, deadline=None)
def test_rank_matches_dense_oracle(rows):
    assert rank(rows) == dense_rank(rows, 40)


@given(rows_strategy)
@settings(max_examples=80, deadline=None)
def test_nullspace_vectors_are_relations(rows):
    ns = nullspace(rows)
    assert len(ns) == len(rows) - rank(rows)
    for comb in ns:
        acc = 0
        for i in bits(comb):
            acc ^= rows[i]
        assert acc == 0


@given(rows_strategy, st.integers(0, 2 ** 40 - 1))
@settings(max_examples=80, deadline=None)
def test_solve(rows, target):
    c = solve(rows, target)
    in_span = rank(rows + [target]) == rank(rows)
    assert (c is not None) == in_span
    if c is not None:
        acc = 0
        for i in bits(c):
            acc ^= rows[i]
        assert acc == target


@given(st.sets(st.integers(0, 3000), max_size=40))
@settings(max_examples=60, deadline=None)
def test_bits_pack_round_trip(positions):
    x = pack(positions)
    assert bits(x) == sorted(positions, reverse=True)


def test_echelon_membership():
    e = Echelon()
    assert e.add(0b1010)
    assert e.add(0b0110)
    assert not e.add(0b1100)
    assert 0b1100 in e
    assert 0b0001 not in e
    assert len(e) == 2
    # full reduction clears every pivot bit: 1111 -> 0101 -> 0011
    assert e.full_reduce(0b1111) == 0b0011
