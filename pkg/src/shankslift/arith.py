"""Elementary integer arithmetic: primality, factoring, polynomials mod p."""

import math
import random
from functools import lru_cache

# Deterministic Miller-Rabin witness set, valid for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
PROBABILISTIC_ROUNDS = 40


def _mr_round(n, d, s, a):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n, rng=None):
    """Return ``(is_prime, certain)``.

    ``certain`` is False only above the deterministic witness range, where
    40 random Miller-Rabin rounds are used.
    """
    if n < 2:
        return False, True
    for q in _MR_BASES:
        if n % q == 0:
            return n == q, True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < MR_DETERMINISTIC_LIMIT:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES), True
    rng = rng or random.Random(n)
    for _ in range(PROBABILISTIC_ROUNDS):
        if not _mr_round(n, d, s, rng.randrange(2, n - 1)):
            return False, True
    return True, False


def is_prime(n):
    return primality(n)[0]


@lru_cache(maxsize=None)
def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(limit):
    if limit < 2:
        return []
    return list(_sieve(int(limit)))


def factorint(n):
    """Factor a nonzero integer by trial division (fine below ~1e12)."""
    n = abs(n)
    out = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for c in (q, q + 2):
            while n % c == 0:
                out[c] = out.get(c, 0) + 1
                n //= c
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n, p):
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def primitive_root(p):
    if p == 2:
        return 1
    qs = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"no primitive root mod {p}")


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# ---- polynomials over F_p, coefficient lists low degree first ----

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    a = [c % p for c in a]
    _trim(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_mod(out, m, p)


def poly_powmod(a, e, m, p):
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, m, p)
        base = poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def poly_gcd(a, b, p):
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_roots_mod_p(poly, p, rng=None):
    """Distinct roots in F_p of a polynomial (Cantor-Zassenhaus splitting)."""
    poly = _trim([c % p for c in poly])
    if len(poly) <= 1:
        return []
    if p < 50:
        return sorted(r for r in range(p) if _eval(poly, r, p) == 0)
    g = poly_gcd(poly, _xp_minus_x(poly, p), p)
    rng = rng or random.Random(p)
    return sorted(_split_roots(g, p, rng))


def _eval(poly, x, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _xp_minus_x(m, p):
    xp = poly_powmod([0, 1], p, m, p)
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    return _trim(xp)


def _split_roots(g, p, rng):
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0]) * pow(g[1], -1, p) % p]
    while True:
        delta = rng.randrange(p)
        h = poly_powmod([delta, 1], (p - 1) // 2, g, p)
        h = h + [0] * max(0, 1 - len(h))
        h[0] = (h[0] - 1) % p
        d = poly_gcd(g, h, p)
        if 0 < len(d) - 1 < deg:
            q = _poly_divexact(g, d, p)
            return _split_roots(d, p, rng) + _split_roots(q, p, rng)


def _poly_divexact(a, b, p):
    a = [c % p for c in a]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + db] * inv % p
        q[i] = c
        for j, bc in enumerate(b):
            a[i + j] = (a[i + j] - c * bc) % p
    return q


def hensel_root(poly, r, p, k):
    """Lift a simple root r of poly mod p to a root mod p**k."""
    mod = p
    dpoly = [i * c for i, c in enumerate(poly)][1:]
    while mod < p**k:
        mod = min(mod * mod, p**k)
        fr = _eval(poly, r, mod)
        dfr = _eval(dpoly, r, mod)
        r = (r - fr * pow(dfr, -1, mod)) % mod
    return r % p**k
