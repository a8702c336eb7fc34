import pytest
from hypothesis import given, strategies as st

from shankslift.rings import NotAUnit, WittRing, conway_like_modulus

rings = st.sampled_from([WittRing(3, 1), WittRing(3, 3), WittRing(5, 2), WittRing(3, 2, 2), WittRing(5, 1, 3)])


@st.composite
def ring_and_elems(draw):
    R = draw(rings)
    el = st.tuples(*[st.integers(0, R.modulus - 1)] * R.f)
    return R, draw(el), draw(el), draw(el)


@given(ring_and_elems())
def test_ring_axioms(data):
    R, a, b, c = data
    assert R.mul(a, R.mul(b, c)) == R.mul(R.mul(a, b), c)
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero
    assert R.mul(a, R.one) == a


@given(ring_and_elems())
def test_inverse(data):
    R, a, _, _ = data
    if R.is_unit(a):
        assert R.mul(a, R.inv(a)) == R.one
    else:
        with pytest.raises(NotAUnit):
            R.inv(a)


def test_residue_field_is_a_field():
    for p, f in ((2, 2), (3, 2), (3, 3), (5, 2)):
        R = WittRing(p, 1, f)
        units = [x for x in R.elements() if x != R.zero]
        assert len(units) == p**f - 1
        assert all(R.is_unit(x) for x in units)


def test_modulus_irreducible():
    for p, f in ((3, 2), (3, 3), (5, 2), (7, 3)):
        g = conway_like_modulus(p, f)
        assert all(sum(c * r**i for i, c in enumerate(g)) % p for r in range(p))


def test_valuation():
    R = WittRing(3, 4)
    assert R.valuation(R(9)) == 2
    assert R.valuation(R.zero) == 4
