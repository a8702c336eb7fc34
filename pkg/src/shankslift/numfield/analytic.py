"""Rigorous enclosure of h*R from the class number formula of a cyclic cubic field.

For conductor l and an even cubic character chi mod l,

    h R = |sum_{a=1}^{l-1} chi(a) log sin(pi a / l)|^2 / 4 .

Grouping residues by the index of a modulo 3 (with respect to a primitive
root) gives real sums S0, S1, S2 and |S0 + w S1 + w^2 S2|^2 with w a cube
root of unity equals ((S0-S1)^2 + (S1-S2)^2 + (S2-S0)^2) / 2.
"""

import logging

import mpmath

from ..arith import primitive_root
from .field import iv_dps

log = logging.getLogger(__name__)


class PrecisionExhausted(ArithmeticError):
    pass


def cubic_index_classes(ell):
    """List cls with cls[a] = index of a mod 3 for 1 <= a < ell."""
    g = primitive_root(ell)
    cls = [0] * ell
    x = 1
    for k in range(ell - 1):
        cls[x] = k % 3
        x = x * g % ell
    return cls


def analytic_hr(field, precision=30):
    """Interval (mpmath.iv.mpf) guaranteed to contain h*R; precision in digits."""
    ell = field.ell
    if ell % 3 != 1:
        raise ValueError("need ell = 1 mod 3 for a cubic character")
    cls = cubic_index_classes(ell)
    with iv_dps(precision + 5) as iv:
        S = [iv.mpf(0), iv.mpf(0), iv.mpf(0)]
        pi = iv.pi
        half = (ell - 1) // 2
        for a in range(1, half + 1):
            # chi is even, so a and ell - a contribute equally
            S[cls[a]] += iv.log(iv.sin(pi * a / ell))
        S = [2 * s for s in S]
        val = ((S[0] - S[1]) ** 2 + (S[1] - S[2]) ** 2 + (S[2] - S[0]) ** 2) / 8
    log.debug("analytic hR for ell=%d at %d digits: %s", ell, precision, val)
    return val


def unique_integer_in(interval):
    """The unique integer in a real interval, or None when there is none.

    Raises PrecisionExhausted when the interval contains several integers.
    """
    lo, hi = mpmath.ceil(interval.a), mpmath.floor(interval.b)
    if lo > hi:
        return None
    if lo != hi:
        raise PrecisionExhausted(f"interval {interval} contains several integers")
    return int(lo)
