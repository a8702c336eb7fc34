"""The unit candidates theta and theta + 1, their regulator and q-saturation."""

import logging
from dataclasses import dataclass, field as dc_field

import mpmath

from ..arith import primes_up_to
from .field import iv_dps

log = logging.getLogger(__name__)

THETA = (0, 1, 0)
THETA_PLUS_ONE = (1, 1, 0)
MINUS_ONE = (-1, 0, 0)


class SaturationInconclusive(ArithmeticError):
    pass


@dataclass
class UnitGroup:
    field: object
    candidates: tuple
    regulator: object  # mpmath.iv.mpf
    saturated: dict = dc_field(default_factory=dict)  # q -> bool
    precision: int = 30

    @property
    def regulator_float(self):
        return float(self.regulator.mid)


def regulator_interval(field, units=(THETA, THETA_PLUS_ONE), precision=30):
    roots = field.root_intervals(precision)
    with iv_dps(precision + 5) as iv:
        logs = [[iv.log(abs(u[0] + u[1] * r + u[2] * r * r)) for r in roots[:2]] for u in units]
        det = logs[0][0] * logs[1][1] - logs[0][1] * logs[1][0]
        if det.a < 0 < det.b:
            raise SaturationInconclusive("regulator interval contains 0")
        return abs(det)


def _vandermonde_solve(roots, ys, iv):
    """Coordinates (c0,c1,c2) with c0 + c1 r + c2 r^2 = y at the three roots."""
    r0, r1, r2 = roots
    coeffs = [iv.mpf(0)] * 3
    for i, (ri, yi) in enumerate(zip(roots, ys)):
        others = [roots[j] for j in range(3) if j != i]
        denom = (ri - others[0]) * (ri - others[1])
        w = yi / denom
        # Lagrange basis (x - o0)(x - o1) = x^2 - (o0+o1) x + o0 o1
        coeffs[0] += w * others[0] * others[1]
        coeffs[1] -= w * (others[0] + others[1])
        coeffs[2] += w
    return coeffs


def qth_root(field, u, q, precision=30):
    """An integral x with x^q = u, or None.  Decided with interval arithmetic.

    Raises SaturationInconclusive when an interval contains several integers.
    """
    roots = field.root_intervals(precision)
    with iv_dps(precision + 5) as iv:
        emb = [u[0] + u[1] * r + u[2] * r * r for r in roots]
        if q % 2 == 0:
            if any(e.b < 0 for e in emb):
                return None
            if any(e.a <= 0 for e in emb):
                raise SaturationInconclusive("sign of an embedding undecided")
            base = [iv.exp(iv.log(e) / q) for e in emb]
            sign_choices = [(1, s1, s2) for s1 in (1, -1) for s2 in (1, -1)]
        else:
            base = []
            for e in emb:
                if e.a > 0:
                    base.append(iv.exp(iv.log(e) / q))
                elif e.b < 0:
                    base.append(-iv.exp(iv.log(-e) / q))
                else:
                    raise SaturationInconclusive("sign of an embedding undecided")
            sign_choices = [(1, 1, 1)]
        for signs in sign_choices:
            ys = [s * b for s, b in zip(signs, base)]
            coords = _vandermonde_solve(roots, ys, iv)
            cand = []
            for c in coords:
                lo, hi = int(mpmath.ceil(c.a)), int(mpmath.floor(c.b))
                if lo > hi:
                    cand = None
                    break
                if lo != hi:
                    raise SaturationInconclusive("coordinate interval too wide")
                cand.append(lo)
            if cand is None:
                continue
            x = tuple(cand)
            if field.power(x, q) == tuple(u):
                return x
    return None


def is_q_saturated(field, q, precision=30):
    """True iff no nontrivial element of <-1, theta, theta+1> mod q-th powers is a q-th power."""
    for i in range(q):
        for j in range(q):
            for k in range(2 if q == 2 else 1):
                if i == j == k == 0:
                    continue
                u = field.mul(field.power(THETA, i), field.power(THETA_PLUS_ONE, j))
                if k:
                    u = tuple(-c for c in u)
                if qth_root(field, u, q, precision) is not None:
                    log.info("unit %s is a %d-th power", u, q)
                    return False
    return True


def unit_group(field, precision=30, saturation_bound=7, escalations=3):
    if field.norm(THETA) != 1 or field.norm(THETA_PLUS_ONE) != -1:
        raise AssertionError("theta or theta+1 is not a unit")
    prec = precision
    for attempt in range(escalations + 1):
        try:
            reg = regulator_interval(field, precision=prec)
            sat = {q: is_q_saturated(field, q, prec) for q in primes_up_to(saturation_bound)}
            return UnitGroup(field, (THETA, THETA_PLUS_ONE), reg, sat, prec)
        except SaturationInconclusive:
            if attempt == escalations:
                raise
            prec *= 2
            log.info("raising unit precision to %d digits", prec)
