"""Coefficient rings W(F_q)/p^N, with N = 1 giving the finite field F_q.

Elements are tuples of f integers in [0, p^N): coordinates in the basis
1, x, ..., x^(f-1) of Z_p[x]/(g) for a monic lift g of an irreducible
polynomial of degree f over F_p.
"""

from functools import lru_cache


class NotAUnit(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def conway_like_modulus(p, f):
    """Smallest monic irreducible polynomial of degree f over F_p (f <= 3)."""
    if f == 1:
        return (0, 1)
    if f > 3:
        raise NotImplementedError("extension degree f > 3 is not supported")
    # For degree 2 or 3 irreducible <=> no root in F_p.
    from itertools import product

    for low in product(range(p), repeat=f):
        poly = tuple(low) + (1,)
        if all(_peval(poly, r, p) for r in range(p)):
            return poly
    raise AssertionError("no irreducible polynomial found")


def _peval(poly, r, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * r + c) % p
    return acc


class WittRing:
    """W(F_{p^f}) / p^N."""

    def __init__(self, p, N=1, f=1):
        if N < 1 or f < 1:
            raise ValueError("need N >= 1 and f >= 1")
        self.p, self.N, self.f = p, N, f
        self.modulus = p**N
        self.g = conway_like_modulus(p, f)
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    def __repr__(self):
        return f"WittRing(p={self.p}, N={self.N}, f={self.f})"

    def __eq__(self, other):
        return isinstance(other, WittRing) and (self.p, self.N, self.f) == (other.p, other.N, other.f)

    def __hash__(self):
        return hash((self.p, self.N, self.f))

    @property
    def is_field(self):
        return self.N == 1

    @property
    def order(self):
        return self.modulus**self.f

    def __call__(self, x):
        if isinstance(x, tuple):
            if len(x) != self.f:
                raise ValueError("wrong element length")
            return tuple(c % self.modulus for c in x)
        return (int(x) % self.modulus,) + (0,) * (self.f - 1)

    def elements(self):
        from itertools import product

        return [tuple(t) for t in product(range(self.modulus), repeat=self.f)]

    def add(self, a, b):
        m = self.modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.modulus
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.modulus
        return tuple(-x % m for x in a)

    def mul(self, a, b):
        m, f = self.modulus, self.f
        if f == 1:
            return (a[0] * b[0] % m,)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        g = self.g
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                for i in range(f):
                    prod[k - f + i] -= c * g[i]
        return tuple(c % m for c in prod[:f])

    def scale(self, a, n):
        m = self.modulus
        return tuple(x * n % m for x in a)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a):
        return not any(a)

    def is_unit(self, a):
        return any(x % self.p for x in a)

    def valuation(self, a):
        """p-adic valuation, capped at N for zero."""
        v = self.N
        for x in a:
            if x:
                k = 0
                while x % self.p == 0:
                    x //= self.p
                    k += 1
                v = min(v, k)
        return v

    def divide_by_p_power(self, a, k):
        """Exact division by p^k of an element divisible by p^k (result mod p^(N-k))."""
        pk = self.p**k
        if any(x % pk for x in a):
            raise ArithmeticError("element not divisible by p^k")
        return tuple(x // pk for x in a)

    def reduce(self, a, N):
        m = self.p**N
        return tuple(x % m for x in a)

    def inv(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit in {self}")
        if self.f == 1:
            return (pow(a[0], -1, self.modulus),)
        # a^(q-2) inverts mod p; Newton iteration lifts to p^N.
        residue = WittRing(self.p, 1, self.f)
        x = residue.pow(residue(a), self.p**self.f - 2)
        prec = 1
        while prec < self.N:
            prec *= 2
            # x <- x * (2 - a x)
            ax = self.mul(a, x)
            x = self.mul(x, self.sub(self(2), ax))
        return x

    def __contains__(self, a):
        return isinstance(a, tuple) and len(a) == self.f
