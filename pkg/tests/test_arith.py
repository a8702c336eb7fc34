import random

from hypothesis import given, strategies as st

from shankslift.arith import (factorint, hensel_root, is_prime, legendre, poly_roots_mod_p, primality,
                              primes_up_to, primitive_root, valuation)


def trial_division_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_matches_trial_division():
    for n in range(-5, 5000):
        assert is_prime(n) == trial_division_prime(n), n


def test_primes_up_to_matches_filter():
    assert primes_up_to(200) == [n for n in range(201) if trial_division_prime(n)]


def test_large_primes_are_certain():
    ok, certain = primality(71563)
    assert ok and certain
    ok, _ = primality(2**61 - 1)
    assert ok
    assert not primality(2**61 + 1)[0]


@given(st.integers(min_value=1, max_value=10**9))
def test_factorint_reconstructs(n):
    f = factorint(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p)
        prod *= p**e
    assert prod == n


@given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7]))
def test_valuation(n, p):
    k = valuation(n, p)
    assert n % p**k == 0 and n % p ** (k + 1) != 0


def test_primitive_root_generates():
    for p in primes_up_to(300)[1:]:
        g = primitive_root(p)
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1


def test_legendre_matches_squares():
    for p in (3, 5, 7, 11, 13, 349):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


def test_poly_roots_match_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        p = rng.choice(primes_up_to(120))
        poly = [rng.randrange(p) for _ in range(3)] + [1]
        brute = sorted(x for x in range(p) if sum(c * x**i for i, c in enumerate(poly)) % p == 0)
        assert sorted(poly_roots_mod_p(poly, p)) == brute


def test_hensel_root_lifts():
    poly = [-1, -19, -16, 1]  # the Shanks cubic for a = 16
    for p in (5, 7, 11, 13):
        for r in poly_roots_mod_p(poly, p):
            R = hensel_root(poly, r, p, 6)
            assert sum(c * R**i for i, c in enumerate(poly)) % p**6 == 0
            assert R % p == r
