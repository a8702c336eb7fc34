import itertools
import math
import random
from fractions import Fraction

from hypothesis import given, strategies as st

from shankslift.linalg import (bareiss_det, hnf_mod_d, independent_rows_mod_p, left_kernel_mod_p,
                               nullspace_mod_p, rank_mod_p, smith_form, solve_mod_p, xgcd)


def fraction_det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n, det = len(M), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return int(det)


def minors_gcd(M, k):
    g = 0
    rows, cols = len(M), len(M[0])
    for R in itertools.combinations(range(rows), k):
        for C in itertools.combinations(range(cols), k):
            g = math.gcd(g, fraction_det([[M[i][j] for j in C] for i in R]))
    return g


small_mats = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n + 2))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g == math.gcd(a, b) and a * x + b * y == g


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_bareiss_matches_fractions(M):
    assert bareiss_det(M) == fraction_det(M)


@given(small_mats)
def test_smith_invariants_match_minor_gcds(M):
    n = len(M[0])
    diag, V, Vinv = smith_form(M, n)
    # d_1 ... d_k equals the gcd of k x k minors
    prod = 1
    for k in range(1, n + 1):
        prod *= diag[k - 1]
        assert abs(prod) == minors_gcd(M, k)
    for i in range(len(diag) - 1):
        if diag[i + 1]:
            assert diag[i + 1] % diag[i] == 0
    # V Vinv = I
    for i in range(n):
        for j in range(n):
            assert sum(V[i][k] * Vinv[k][j] for k in range(n)) == (i == j)


def test_hnf_determinant_and_lattice():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n + 3)]
        D = minors_gcd(rows, n)
        if D == 0:
            continue
        H = hnf_mod_d(rows + [[D if i == j else 0 for j in range(n)] for i in range(n)], n, D)
        assert math.prod(H[i][i] for i in range(n)) == D
        for i in range(n):
            for j in range(i):
                assert H[i][j] == 0


@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=6))
def test_nullspace_and_rank(rows):
    p = 7
    ns = nullspace_mod_p(rows, p, 4)
    assert len(ns) + rank_mod_p(rows, p, 4) == 4
    for v in ns:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) % p == 0
    for w in left_kernel_mod_p(rows, p):
        assert all(sum(w[i] * rows[i][j] for i in range(len(rows))) % p == 0 for j in range(4))
    idx = independent_rows_mod_p(rows, p)
    assert rank_mod_p([rows[i] for i in idx], p, 4) == len(idx) == rank_mod_p(rows, p, 4)


def test_solve_mod_p():
    A = [[1, 2], [3, 4]]
    x = solve_mod_p(A, [5, 6], 7)
    assert [(A[i][0] * x[0] + A[i][1] * x[1]) % 7 for i in range(2)] == [5, 6]
