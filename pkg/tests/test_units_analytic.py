import numpy as np

from shankslift.numfield.analytic import analytic_hr, cubic_index_classes, unique_integer_in
from shankslift.numfield.field import build_field
from shankslift.numfield.units import MINUS_ONE, THETA, THETA_PLUS_ONE, is_q_saturated, qth_root, regulator_interval, unit_group
from shankslift.shanks import parameter_for_ell


def float_hr(ell):
    cls = cubic_index_classes(ell)
    w = np.exp(2j * np.pi / 3)
    a = np.arange(1, ell)
    chi = np.array([w ** cls[x] for x in a])
    return abs(np.sum(chi * np.log(np.abs(1 - np.exp(2j * np.pi * a / ell))))) ** 2 / 4


def test_analytic_interval_contains_float_value():
    for ell in (7, 313, 7489):
        I = analytic_hr(build_field(parameter_for_ell(ell)), 30)
        assert I.a <= float_hr(ell) * (1 + 1e-9) and float_hr(ell) * (1 - 1e-9) <= I.b
        assert float(I.delta) < 1e-20


def test_regulator_against_numpy():
    for ell in (13, 349, 7489):
        p = parameter_for_ell(ell)
        r = np.roots([1, -p.a, -(p.a + 3), -1])
        logs = [[np.log(abs(r[i])), np.log(abs(r[i] + 1))] for i in range(2)]
        R = abs(logs[0][0] * logs[1][1] - logs[0][1] * logs[1][0])
        I = regulator_interval(build_field(p))
        assert abs(float(I.mid) - R) < 1e-9 * R


def test_units_and_saturation():
    F = build_field(parameter_for_ell(349))
    assert F.norm(THETA) == 1 and F.norm(THETA_PLUS_ONE) == -1 and F.norm(MINUS_ONE) == -1
    ug = unit_group(F)
    assert all(ug.saturated.values())
    assert is_q_saturated(F, 3)
    sq = F.mul(THETA, THETA)
    assert qth_root(F, sq, 2) in (THETA, tuple(-c for c in THETA))
    assert qth_root(F, THETA, 2) is None


def test_unique_integer():
    from mpmath import iv

    assert unique_integer_in(iv.mpf([6.9, 7.1])) == 7
    assert unique_integer_in(iv.mpf([6.2, 6.8])) is None
