import mpmath
import numpy as np
from hypothesis import given, strategies as st

from shankslift.numfield.field import AlgebraicNumber, build_field
from shankslift.shanks import shanks_prime

FIELDS = {a: build_field(shanks_prime(a)) for a in (-1, 1, 16, 17, 85)}
coords = st.tuples(*[st.integers(-50, 50)] * 3)
field_st = st.sampled_from(sorted(FIELDS))


def float_norm(F, x):
    roots = np.roots([1, -F.a, -(F.a + 3), -1])
    return float(np.prod([x[0] + x[1] * r + x[2] * r * r for r in roots]).real)


@given(field_st, coords, coords)
def test_norm_multiplicative(a, x, y):
    F = FIELDS[a]
    assert F.norm(F.mul(x, y)) == F.norm(x) * F.norm(y)


@given(field_st, coords)
def test_norm_matches_embeddings(a, x):
    F = FIELDS[a]
    n = F.norm(x)
    assert abs(n - float_norm(F, x)) <= 1e-6 * max(1, abs(n))


@given(field_st, coords)
def test_sigma_is_an_automorphism_of_order_three(a, x):
    F = FIELDS[a]
    assert F.sigma(F.sigma(F.sigma(x))) == tuple(x)
    assert F.norm(F.sigma(x)) == F.norm(x)
    y = (1, 2, -1)
    assert F.sigma(F.mul(x, y)) == F.mul(F.sigma(x), F.sigma(y))


def test_sigma_theta_is_minus_inverse_of_theta_plus_one():
    for F in FIELDS.values():
        s = F.sigma((0, 1, 0))
        # s * (1 + theta) = -1
        assert F.mul(s, (1, 1, 0)) == (-1, 0, 0)
        # numerically the roots are permuted cyclically
        roots = F.roots()
        for i, r in enumerate(roots):
            val = s[0] + s[1] * r + s[2] * r * r
            assert abs(val - roots[(i + 1) % 3]) < 1e-12


def test_trace_and_inverse():
    F = FIELDS[16]
    x = (3, -1, 2)
    assert F.mul(x, F.inverse(x)) == (1, 0, 0)
    assert all(c.denominator == abs(F.norm(x)) or F.norm(x) % c.denominator == 0 for c in F.inverse(x))
    assert F.trace((1, 0, 0)) == 3
    assert F.trace((0, 1, 0)) == F.a
    t = AlgebraicNumber.theta(F)
    assert (t * t * t).coords == F.add(F.add(F.mul((F.a, 0, 0), (0, 0, 1)), ((0, F.a + 3, 0))), (1, 0, 0))


def test_root_intervals_contain_roots():
    F = FIELDS[85]
    for I, r in zip(F.root_intervals(30), F.roots(40)):
        assert I.a <= r <= I.b
