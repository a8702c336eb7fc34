import pytest

from shankslift.modrep import CyclicActionModule, decompose
from shankslift.numfield.classgroup import class_group, class_group_action
from shankslift.numfield.field import build_field
from shankslift.numfield.rayclass import default_three_exponent, ray_class_3rank
from shankslift.numfield.selmer2 import _mod4_class, count_A4_extensions, sign_vector, unramified_quadratic_extensions
from shankslift.shanks import parameter_for_ell

_c = {}


def data(ell):
    if ell not in _c:
        F = build_field(parameter_for_ell(ell))
        _c[ell] = (F, class_group(F))
    return _c[ell]


def test_three_exponent_default():
    assert default_three_exponent(1) == 2


def test_ray_class_7489():
    F, cg = data(7489)
    with_ell = ray_class_3rank(F, cg, include_ell=True)
    without = ray_class_3rank(F, cg, include_ell=False)
    assert with_ell.rank3 == 3 and without.rank3 == 2
    assert with_ell.cardinality_check and without.cardinality_check
    # order = h * |(O/m)^*| / |unit image|
    assert with_ell.order == cg.h * with_ell.residue_order // with_ell.unit_image_order


@pytest.mark.parametrize("ell", [313, 349, 20887])
def test_ray_class_cardinality(ell):
    F, cg = data(ell)
    assert ray_class_3rank(F, cg, include_ell=True).cardinality_check


def test_quadratic_extensions_count():
    for ell, n in ((313, 0), (349, 3), (7489, 3), (20887, 15)):
        F, cg = data(ell)
        exts = unramified_quadratic_extensions(F, cg)
        assert len(exts) == 2 ** cg.p_rank(2) - 1 == n
        for k in exts:
            x = k.value(F).coords
            # unramified at infinity and at 2: totally positive, a square mod 4
            assert sign_vector(F, x) == [0, 0, 0]
            assert _mod4_class(F, x) == [0, 0, 0]
            assert any(k.signature)  # not a global square


def test_a4_counts_match_module_decomposition():
    for ell, k in ((313, 0), (349, 1), (7489, 1), (20887, 2)):
        F, cg = data(ell)
        assert count_A4_extensions(F, cg) == k
        if cg.p_rank(2):
            assert decompose(CyclicActionModule(2, class_group_action(cg, 2))).m_U2 == k


def test_sign_vector():
    F, _ = data(349)
    assert sign_vector(F, (-1, 0, 0)) == [1, 1, 1]
    assert sign_vector(F, (1, 0, 0)) == [0, 0, 0]
