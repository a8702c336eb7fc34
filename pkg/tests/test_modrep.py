import doctest
import itertools
import random

import pytest
from hypothesis import given, strategies as st

from shankslift import modrep
from shankslift.linalg import matmul_mod_p
from shankslift.modrep import BadOrder, CyclicActionModule, WildPrime, a4_order_table, decompose, parity_holds

U2 = [[0, 1], [1, 1]]  # companion-type block of order 3 over F_2 (x^2 + x + 1)


def companion(p):
    # x^2 + x + 1: [[0, -1], [1, -1]]
    return [[0, p - 1], [1, p - 1]]


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    M = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                M[k + i][k + j] = x
        k += len(b)
    return M


def random_invertible(n, p, rng):
    from shankslift.linalg import rank_mod_p

    while True:
        A = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if rank_mod_p(A, p, n) == n:
            return A


def inverse_mod_p(A, p):
    n = len(A)
    M = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] % p)
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, p)
        M[c] = [x * inv % p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def brute_fixed_dim(T, p):
    n = len(T)
    count = 0
    for v in itertools.product(range(p), repeat=n):
        if all(sum(T[i][j] * v[j] for j in range(n)) % p == v[i] for i in range(n)):
            count += 1
    k = 0
    while p**k < count:
        k += 1
    return k


@given(st.sampled_from([2, 5, 11]), st.integers(0, 2), st.integers(0, 2), st.integers(0, 10**6))
def test_decomposition_matches_construction(p, m0, m2, seed):
    rng = random.Random(seed)
    if m0 + m2 == 0:
        m0 = 1
    blocks = [[[1]]] * m0 + [companion(p)] * m2
    B = block_diag(blocks)
    n = len(B)
    P = random_invertible(n, p, rng)
    T = matmul_mod_p(matmul_mod_p(P, B, p), inverse_mod_p(P, p), p)
    dec = decompose(CyclicActionModule(p, T))
    assert (dec.m_trivial, dec.m_U2) == (m0, m2)
    assert dec.m_trivial == brute_fixed_dim(T, p)
    assert parity_holds(CyclicActionModule(p, T)) == (m0 == 0)


def test_split_case_characters():
    dec = decompose(CyclicActionModule(7, [[2, 0, 0], [0, 4, 0], [0, 0, 1]]))
    assert dec.characters == (1, 1, 1)


def test_errors():
    with pytest.raises(BadOrder):
        CyclicActionModule(2, [[1, 1], [0, 1]])
    with pytest.raises(WildPrime):
        decompose(CyclicActionModule(3, [[1]]))


def test_a4_table():
    t = a4_order_table()
    assert sorted(t.values()) == [1, 2, 3, 3]


def test_doctests():
    assert doctest.testmod(modrep).failed == 0
