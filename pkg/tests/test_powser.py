import pytest
from hypothesis import given, settings, strategies as st

from shankslift.linalg import rank_mod_p
from shankslift.powser import (INFINITE, DegenerateRing, NotDistinguished, PrecisionTooLow, TruncatedSeries,
                               Unsupported, classify_ring, is_distinguished, presentation_family, series_inverse,
                               series_mul, weierstrass_prepare)
from shankslift.rings import NotAUnit


def S(c, p=3, N=5, M=8):
    return TruncatedSeries(p, N, M, c)


def test_geometric_inverse():
    inv = series_inverse(S([1, 1]))
    assert inv.int_coeffs() == [(-1) ** k % 243 for k in range(8)]
    assert series_mul(S([1, 1]), inv) == S([1])
    assert series_inverse(S([1, 3])).int_coeffs() == [(-3) ** k % 243 for k in range(8)]
    with pytest.raises(NotAUnit):
        series_inverse(S([0, 1]))


def test_prepare_examples():
    pf = weierstrass_prepare(S([0, 3]))
    assert (pf.mu, pf.unit, pf.distinguished_ints()) == (1, TruncatedSeries(3, 4, 8, [1]), [0, 1])
    F = S([3, 3, 1])
    pf = weierstrass_prepare(F)
    assert pf.mu == 0 and pf.unit == S([1]) and pf.distinguished_ints() == [3, 3, 1]
    F = series_mul(S([1, 1]), S([-3, 1]))
    pf = weierstrass_prepare(F)
    assert pf.unit == S([1, 1]) and pf.distinguished_ints() == [240, 1]
    assert pf.reconstruct() == F


def test_precision_errors():
    with pytest.raises(PrecisionTooLow):
        weierstrass_prepare(S([0] * 8))
    # dividing out p^mu always leaves a unit coefficient, so only F = 0 fails
    with pytest.raises(PrecisionTooLow):
        weierstrass_prepare(TruncatedSeries(3, 2, 4, [9, 18, 0, 27]))


@st.composite
def random_series(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    N = draw(st.integers(1, 6))
    M = draw(st.integers(1, 12))
    coeffs = draw(st.lists(st.integers(0, p**N - 1), min_size=M, max_size=M))
    return TruncatedSeries(p, N, M, coeffs)


@settings(max_examples=1000)
@given(random_series())
def test_reconstruction(F):
    try:
        pf = weierstrass_prepare(F)
    except PrecisionTooLow:
        return
    assert pf.reconstruct() == F
    assert is_distinguished(pf.distinguished, F.p)
    assert pf.degree < F.M


@st.composite
def known_factorisation(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    N = draw(st.integers(2, 5))
    mu = draw(st.integers(0, N - 1))
    d = draw(st.integers(0, 3))
    h = [p * draw(st.integers(0, p ** (N - 1))) for _ in range(d)] + [1]
    k = draw(st.integers(0, 3))
    u = [draw(st.integers(1, p - 1))] + [draw(st.integers(0, p**N - 1)) for _ in range(k)]
    return p, N, mu, h, u


@settings(max_examples=200)
@given(known_factorisation())
def test_uniqueness_on_known_factorisations(data):
    p, N, mu, h, u = data
    M = len(h) + len(u) + 2  # the whole product fits the window
    F = series_mul(TruncatedSeries(p, N, M, u), TruncatedSeries(p, N, M, h))
    F = TruncatedSeries(p, N, M, [c * p**mu for c in F.int_coeffs()])
    pf = weierstrass_prepare(F)
    assert pf.mu == mu and pf.degree == len(h) - 1
    m = p ** (N - mu)
    assert pf.distinguished_ints() == [c % m for c in h]


def quotient_dim_mod_p(h, p, K=12):
    """dim F_p[T]/(T^K, h) by row-reducing the multiples T^i h."""
    hb = [c % p for c in h]
    rows = []
    for i in range(K):
        r = [0] * K
        for j, c in enumerate(hb):
            if i + j < K:
                r[i + j] = c
        rows.append(r)
    return K - rank_mod_p(rows, p, K)


def test_classification():
    c = classify_ring(0, [3, 0, 1], 3)
    assert c.flat_over_W and c.has_char0_point and c.modp_dimension == 2
    c = classify_ring(1, [1], 3)
    assert not c.flat_over_W and not c.has_char0_point and c.modp_dimension == INFINITE
    c = classify_ring(2, [3, 1], 3)
    assert not c.flat_over_W and c.has_char0_point
    with pytest.raises(DegenerateRing):
        classify_ring(0, [1], 3)
    with pytest.raises(NotDistinguished):
        classify_ring(0, [1, 1], 3)
    with pytest.raises(NotDistinguished):
        classify_ring(0, [0, 2], 3)


@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(0, 20), min_size=1, max_size=5))
def test_modp_dimension_against_quotient_oracle(p, low):
    h = [p * c for c in low] + [1]
    assert classify_ring(0, h, p).modp_dimension == quotient_dim_mod_p(h, p) == len(low)


def test_presentation_family():
    assert presentation_family(1, 1) == "W[[T]]/(p^μ h)"
    assert presentation_family(0, 0) == "quotient of W"
    with pytest.raises(Unsupported):
        presentation_family(2, 1)


def test_extension_coefficients():
    # f = 2: coefficients are pairs in W(F_9)/3^N
    F = TruncatedSeries(3, 3, 6, [(3, 0), (0, 3), (1, 1)], f=2)
    pf = weierstrass_prepare(F)
    assert pf.degree == 2 and pf.reconstruct() == F
