"""Integral ideals of Z[theta] as Hermite-normal-form lattices."""

from fractions import Fraction
from math import gcd

from ..arith import poly_roots_mod_p
from ..linalg import hnf_mod_d


class IdealHNF:
    """Integral ideal with Z-basis b0 = (n0,0,0), b1 = (x,n1,0), b2 = (y,z,n2).

    The three basis vectors are the columns of an upper-triangular matrix.
    ``prime`` is (p, r, e, f) for prime ideals produced by the factoriser,
    with r the root of f mod p when the residue degree is 1, else None.
    """

    __slots__ = ("field", "basis", "norm", "prime")

    def __init__(self, field, basis, prime=None):
        self.field = field
        self.basis = tuple(tuple(v) for v in basis)
        b0, b1, b2 = self.basis
        if b0[1] or b0[2] or b1[2]:
            raise ValueError("basis is not upper triangular")
        self.norm = b0[0] * b1[1] * b2[2]
        if self.norm <= 0:
            raise ValueError("ideal must have positive norm")
        self.prime = prime

    def matrix(self):
        """3x3 matrix with the basis vectors as columns."""
        return [[self.basis[j][i] for j in range(3)] for i in range(3)]

    def __eq__(self, other):
        return isinstance(other, IdealHNF) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        if self.prime:
            p, r, e, f = self.prime
            return f"Prime(p={p}, r={r}, e={e}, f={f})"
        return f"IdealHNF(norm={self.norm}, basis={self.basis})"

    def contains(self, x):
        """Exact membership test for an integral coordinate vector."""
        b0, b1, b2 = self.basis
        c2, r2 = divmod(x[2], b2[2])
        if r2:
            return False
        rem1 = x[1] - c2 * b2[1]
        c1, r1 = divmod(rem1, b1[1])
        if r1:
            return False
        rem0 = x[0] - c2 * b2[0] - c1 * b1[0]
        return rem0 % b0[0] == 0

    def is_theta_stable(self):
        return all(self.contains(self.field.mul_theta(v)) for v in self.basis)

    def min_integer(self):
        return self.basis[0][0]


def lattice_to_ideal(field, vectors, D, prime=None):
    """HNF of the Z-span of ``vectors`` together with D*Z^3."""
    rev = [tuple(reversed(v)) for v in vectors]
    H = hnf_mod_d(rev, 3, D)
    # H rows (reversed coordinates): H[2] ~ 1, H[1] ~ theta, H[0] ~ theta^2.
    b0 = tuple(reversed(H[2]))
    b1 = tuple(reversed(H[1]))
    b2 = tuple(reversed(H[0]))
    return IdealHNF(field, (b0, b1, b2), prime)


def ideal_from_generators(field, gens, D):
    """Ideal generated (as an O-module) by ``gens``; D must be a multiple of its norm... or any element of it."""
    vecs = []
    for g in gens:
        v = tuple(g)
        for _ in range(3):
            vecs.append(v)
            v = field.mul_theta(v)
    return lattice_to_ideal(field, vecs, D)


def unit_ideal(field):
    return IdealHNF(field, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def principal_ideal(field, alpha):
    n = abs(field.norm(alpha))
    if n == 0:
        raise ZeroDivisionError("zero element")
    return ideal_from_generators(field, [alpha], n)


def ideal_mul(A, B):
    field = A.field
    gens = [field.mul(x, y) for x in A.basis for y in B.basis]
    return lattice_to_ideal(field, gens, A.norm * B.norm)


def ideal_norm(A):
    return A.norm


def ideal_pow(A, e):
    result = unit_ideal(A.field)
    base = A
    while e:
        if e & 1:
            result = ideal_mul(result, base)
        base = ideal_mul(base, base)
        e >>= 1
    return result


def ideal_sigma(A, k=1):
    field = A.field
    gens = [field.sigma(v, k) for v in A.basis]
    prime = None
    if A.prime and A.prime[1] is not None and A.prime[2] == 1:
        p, r, e, f = A.prime
        for _ in range(k % 3):
            r = field.sigma_residue(r, p)
        prime = (p, r, e, f)
    elif A.prime:
        prime = A.prime
    out = lattice_to_ideal(field, gens, A.norm)
    out.prime = prime
    return out


def ideal_divide_by_integer(A, n):
    """A / n for an ideal contained in nO."""
    basis = []
    for v in A.basis:
        if any(c % n for c in v):
            raise ArithmeticError("ideal not divisible by the integer")
        basis.append(tuple(c // n for c in v))
    return lattice_to_ideal(A.field, basis, A.norm // n**3)


def factor_rational_prime(field, p):
    """Dedekind factorisation of pO as a list of (prime ideal, e, f)."""
    c0, c1, c2, c3 = field.poly.coeffs
    roots = poly_roots_mod_p([c0, c1, c2, c3], p)
    if not roots:
        P = IdealHNF(field, ((p, 0, 0), (0, p, 0), (0, 0, p)), (p, None, 1, 3))
        return [(P, 1, 3)]
    if len(roots) == 3:
        return [(prime_above(field, p, r), 1, 1) for r in roots]
    if len(roots) == 1:
        r = roots[0]
        # p divides the discriminant only for p = l: then f = (x - r)^3 mod p
        if field.poly(r) % p == 0 and (3 * r * r + 2 * c2 * r + c1) % p == 0:
            return [(prime_above(field, p, r, e=3), 3, 1)]
        # a simple root with an irreducible quadratic cofactor
        raise AssertionError("splitting type (1,2) cannot occur in a cyclic cubic field")
    raise AssertionError(f"unexpected root set {roots} mod {p}")


def prime_above(field, p, r, e=1):
    """The degree-one prime (p, theta - r)."""
    P = ideal_from_generators(field, [(p, 0, 0), (-r, 1, 0)], p**3)
    P.prime = (p, r % p, e, 1)
    return P


# ------------------------------------------------------------------ LLL

def trace_gram(field, vectors):
    return [[field.trace(field.mul(x, y)) for y in vectors] for x in vectors]


def lll_reduce(field, vectors, delta=Fraction(3, 4)):
    """LLL-reduce integral vectors for the positive definite form Tr(xy).

    Works exactly over Q; the lattices here have rank 3.
    """
    b = [tuple(v) for v in vectors]
    n = len(b)

    def ip(x, y):
        return field.trace(field.mul(x, y))

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar_norm = [Fraction(0)] * n
        G = [[ip(b[i], b[j]) for j in range(n)] for i in range(n)]
        # Gram-Schmidt directly from the Gram matrix
        r = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = Fraction(G[i][j])
                for k in range(j):
                    s -= mu[j][k] * r[i][k]
                r[i][j] = s
                if j < i:
                    mu[i][j] = s / bstar_norm[j]
                else:
                    bstar_norm[i] = s
        return mu, bstar_norm

    k = 1
    mu, B = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = tuple(x - q * y for x, y in zip(b[k], b[j]))
                mu, B = gso()
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, B = gso()
            k = max(k - 1, 1)
    return b


def reduced_basis(A):
    return lll_reduce(A.field, A.basis)


def content(x):
    g = 0
    for c in x:
        g = gcd(g, c)
    return g
