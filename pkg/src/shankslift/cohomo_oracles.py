"""Independent brute-force checks for the tame cohomology computations.

``bruteforce_h1`` enumerates all pairs (A, B) and keeps those for which
sigma -> (A, S), tau -> (B, T) defines a homomorphism from a finite quotient
of the tame group to the semidirect product M x| <S, T>; no Fox calculus is
involved.  ``fox_h2`` is the cokernel dimension of the presentation complex.
"""

from itertools import product
from math import gcd, log

from .linalg import field_rank, mat_identity, mat_mul, mat_sub, mat_vec, mat_pow
from .cohomo import cocycle_matrix, h0_dim


def _order(K, M, cap=10_000):
    I = mat_identity(K, len(M))
    P, k = M, 1
    while P != I:
        P = mat_mul(K, P, M)
        k += 1
        if k > cap:
            raise ValueError("matrix order too large")
    return k


def _mult_order(a, m):
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def _lcm(a, b):
    return a * b // gcd(a, b)


def _semi_mul(K, x, y):
    (a, A), (b, B) = x, y
    return ([K.add(s, t) for s, t in zip(a, mat_vec(K, A, b))], mat_mul(K, A, B))


def _semi_pow(K, x, e, n):
    result = ([K.zero] * n, mat_identity(K, n))
    base = x
    while e:
        if e & 1:
            result = _semi_mul(K, result, base)
        base = _semi_mul(K, base, base)
        e >>= 1
    return result


def _semi_inv(K, x, Ainv):
    a, _ = x
    return ([K.neg(c) for c in mat_vec(K, Ainv, a)], Ainv)


def quotient_exponents(datum):
    K = datum.K
    p = K.p
    m = p * _order(K, datum.T)
    n = _lcm(p * _order(K, datum.S), _mult_order(datum.v, m))
    return m, n


def bruteforce_h1(datum):
    """dim H^1 by enumeration over the finite quotient <sigma, tau | rel, tau^m, sigma^n>."""
    from .linalg import mat_inverse

    K, dim = datum.K, datum.dim
    S, T, v = datum.S, datum.T, datum.v
    m, n = quotient_exponents(datum)
    Sinv = mat_inverse(K, S)
    elems = K.elements()
    count = 0
    zero = [K.zero] * dim
    for A in product(elems, repeat=dim):
        s = (list(A), S)
        s_inv = _semi_inv(K, s, Sinv)
        s_n = _semi_pow(K, s, n, dim)
        if s_n[0] != zero:
            continue
        for B in product(elems, repeat=dim):
            t = (list(B), T)
            lhs = _semi_mul(K, _semi_mul(K, s, t), s_inv)
            rhs = _semi_pow(K, t, v, dim)
            if lhs[0] != rhs[0]:
                continue
            if _semi_pow(K, t, m, dim)[0] != zero:
                continue
            count += 1
    q = K.order
    z1 = round(log(count, q))
    if q**z1 != count:
        raise AssertionError("cocycle count is not a power of q")
    b1 = dim - h0_dim(datum)
    return z1 - b1


def fox_h2(datum):
    """dim M - rank of the Fox differential C^1 -> C^2."""
    K, dim = datum.K, datum.dim
    return dim - field_rank(K, cocycle_matrix(datum), 2 * dim)


def bruteforce_h0(datum):
    K = datum.K
    count = 0
    for x in product(K.elements(), repeat=datum.dim):
        x = list(x)
        if mat_vec(K, datum.S, x) == x and mat_vec(K, datum.T, x) == x:
            count += 1
    return round(log(count, K.order))
