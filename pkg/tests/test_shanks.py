import pytest
from hypothesis import given, strategies as st

from shankslift.arith import is_prime
from shankslift.shanks import (CubicPolynomial, ShanksParameter, congruence_profile, discriminant,
                               enumerate_shanks, parameter_for_ell, shanks_polynomial, shanks_prime)


def brute_disc(coeffs):
    """Discriminant as the resultant-style product via numpy-free Sylvester determinant."""
    from fractions import Fraction

    c0, c1, c2, c3 = coeffs
    f = [c3, c2, c1, c0]
    df = [3 * c3, 2 * c2, c1]
    S = [f + [0], [0] + f, df + [0, 0], [0] + df + [0], [0, 0] + df]
    M = [[Fraction(x) for x in r] for r in S]
    n, det = 5, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            t = M[r][c] / M[c][c]
            M[r] = [a - t * b for a, b in zip(M[r], M[c])]
    # disc = -res(f, f') for a monic cubic
    return int(-det)


def test_enumeration_is_exactly_the_primes():
    got = [p.a for p in enumerate_shanks(407)]
    assert got == [a for a in range(-1, 408) if is_prime(a * a + 3 * a + 9)]
    assert 16 in got and 85 in got and 266 in got
    assert all(p.certain for p in enumerate_shanks(407))


def test_discriminant_identity_against_sylvester():
    for p in enumerate_shanks(407):
        poly = shanks_polynomial(p)
        assert discriminant(poly) == p.ell**2 == brute_disc(poly.coeffs)


@given(st.integers(-1, 3000))
def test_discriminant_is_square_for_every_a(a):
    ell = a * a + 3 * a + 9
    poly = CubicPolynomial((-1, -(a + 3), -a, 1))
    assert discriminant(poly) == ell**2


def test_profiles_by_direct_summation():
    for ell in (349, 607, 709):
        prof = congruence_profile(ell)
        assert prof["mod9"] == ell % 9
        assert prof["sumsq_mod3"] == sum(r * r for r in range(ell)) % 3
    assert congruence_profile(349) == {"mod9": 7, "sumsq_mod3": 1}
    assert congruence_profile(607) == {"mod9": 4, "sumsq_mod3": 2}


def test_parameter_inversion():
    for ell, a in ((7, -1), (313, 16), (7489, 85), (71563, 266)):
        assert parameter_for_ell(ell).a == a
    with pytest.raises(ValueError):
        parameter_for_ell(350)


def test_validation_and_display():
    with pytest.raises(ValueError):
        ShanksParameter(3, 20)
    assert shanks_prime(3) is None  # 27 is composite
    assert str(shanks_polynomial(shanks_prime(16))) == "x^3 - 16x^2 - 19x - 1"
    assert str(shanks_polynomial(shanks_prime(-1))) == "x^3 + x^2 - 2x - 1"
