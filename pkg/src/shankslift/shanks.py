"""Shanks primes l = a^2 + 3a + 9 and their simplest cubic polynomials."""

import logging
from dataclasses import dataclass

from .arith import primality

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShanksParameter:
    a: int
    ell: int
    certain: bool = True  # False when primality came from random Miller-Rabin rounds

    def __post_init__(self):
        if self.a < -1:
            raise ValueError("Shanks parameter needs a >= -1")
        if self.ell != self.a * self.a + 3 * self.a + 9:
            raise ValueError(f"ell={self.ell} is not a^2+3a+9 for a={self.a}")


@dataclass(frozen=True)
class CubicPolynomial:
    """Monic cubic x^3 + c2 x^2 + c1 x + c0, stored low degree first."""

    coeffs: tuple  # (c0, c1, c2, 1)

    def __post_init__(self):
        if len(self.coeffs) != 4 or self.coeffs[3] != 1:
            raise ValueError("expected a monic cubic")

    def __call__(self, x):
        c0, c1, c2, _ = self.coeffs
        return ((x + c2) * x + c1) * x + c0

    def __str__(self):
        c0, c1, c2, _ = self.coeffs
        parts = ["x^3"]
        for c, mono in ((c2, "x^2"), (c1, "x"), (c0, "")):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if (mag == 1 and mono) else f"{mag}{mono}"
            parts.append(f"{sign} {body}")
        return " ".join(parts)


def shanks_prime(a):
    """The Shanks parameter for a, or None when a^2+3a+9 is not prime."""
    if a < -1:
        raise ValueError("a must be >= -1")
    ell = a * a + 3 * a + 9
    ok, certain = primality(ell)
    if not ok:
        return None
    if not certain:
        log.warning("ell=%d declared prime by probabilistic Miller-Rabin only", ell)
    return ShanksParameter(a, ell, certain)


def enumerate_shanks(a_max):
    if a_max < -1:
        raise ValueError("a_max must be >= -1")
    out = []
    for a in range(-1, a_max + 1):
        par = shanks_prime(a)
        if par is not None:
            out.append(par)
    return out


def shanks_polynomial(param):
    a = param.a
    return CubicPolynomial((-1, -(a + 3), -a, 1))


def discriminant(poly):
    """Discriminant of a cubic via 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2."""
    d, c, b, a = poly.coeffs
    return 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d


def congruence_profile(ell):
    """Residues used by the rank-one conditions: l mod 9 and sum_{r<l} r^2 mod 3."""
    return {"mod9": ell % 9, "sumsq_mod3": (ell * (ell - 1) * (2 * ell - 1) // 6) % 3}


def parameter_for_ell(ell):
    """Invert l = a^2 + 3a + 9; raises ValueError when l is not a Shanks prime."""
    import math

    disc = 4 * ell - 27
    r = math.isqrt(disc) if disc >= 0 else -1
    if r < 0 or r * r != disc or (r - 3) % 2:
        raise ValueError(f"{ell} is not of the form a^2 + 3a + 9")
    par = shanks_prime((r - 3) // 2)
    if par is None:
        raise ValueError(f"{ell} is not prime")
    return par
