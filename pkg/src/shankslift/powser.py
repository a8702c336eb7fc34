"""Truncated power series over W(F_{p^f})/p^N and Weierstrass preparation.

A series is known modulo (p^N, T^M).  Preparation treats the known
coefficients as a polynomial, so the factorisation p^mu * u * h = F holds
exactly at the declared precision.
"""

import logging
import math
from dataclasses import dataclass

from .rings import NotAUnit, WittRing

log = logging.getLogger(__name__)

INFINITE = math.inf


class PrecisionTooLow(ArithmeticError):
    pass


class NotDistinguished(ValueError):
    pass


class DegenerateRing(ValueError):
    """W[[T]]/(1) is the zero ring."""


class Unsupported(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("R", "M", "coeffs")

    def __init__(self, p, N, M, coeffs, f=1):
        if M < 1:
            raise ValueError("T-precision M must be positive")
        self.R = p if isinstance(p, WittRing) else WittRing(p, N, f)
        self.M = M
        cs = [self.R(c) for c in list(coeffs)[:M]]
        cs += [self.R.zero] * (M - len(cs))
        self.coeffs = tuple(cs)

    @classmethod
    def over(cls, R, M, coeffs):
        return cls(R, R.N, M, coeffs)

    @property
    def p(self):
        return self.R.p

    @property
    def N(self):
        return self.R.N

    def __repr__(self):
        return f"TruncatedSeries(p={self.p}, N={self.N}, M={self.M}, {self.int_coeffs()})"

    def int_coeffs(self):
        if self.R.f == 1:
            return [c[0] for c in self.coeffs]
        return [list(c) for c in self.coeffs]

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.R == other.R and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.R, self.coeffs))

    def __add__(self, other):
        _same(self, other)
        return TruncatedSeries.over(self.R, self.M, [self.R.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        _same(self, other)
        return TruncatedSeries.over(self.R, self.M, [self.R.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        return series_mul(self, other)

    def is_zero(self):
        return all(self.R.is_zero(c) for c in self.coeffs)

    def valuation(self):
        """min p-adic valuation of the coefficients (N for the zero series)."""
        return min(self.R.valuation(c) for c in self.coeffs)

    def weierstrass_degree(self):
        """Index of the first unit coefficient, or None."""
        return next((i for i, c in enumerate(self.coeffs) if self.R.is_unit(c)), None)

    def truncate(self, M):
        return TruncatedSeries.over(self.R, M, self.coeffs[:M])


def _same(A, B):
    if A.R != B.R or A.M != B.M:
        raise ValueError("series at different precisions")


def _mul_lists(R, a, b, M):
    out = [R.zero] * M
    for i, x in enumerate(a[:M]):
        if R.is_zero(x):
            continue
        for j in range(min(len(b), M - i)):
            y = b[j]
            if not R.is_zero(y):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def _inv_list(R, a, M):
    if not R.is_unit(a[0]):
        raise NotAUnit("constant term is not a unit")
    c0 = R.inv(a[0])
    out = [R.zero] * M
    out[0] = c0
    for k in range(1, M):
        acc = R.zero
        for i in range(1, min(k, len(a) - 1) + 1):
            acc = R.add(acc, R.mul(a[i], out[k - i]))
        out[k] = R.neg(R.mul(c0, acc))
    return out


def series_mul(A, B):
    _same(A, B)
    return TruncatedSeries.over(A.R, A.M, _mul_lists(A.R, A.coeffs, B.coeffs, A.M))


def series_inverse(A):
    return TruncatedSeries.over(A.R, A.M, _inv_list(A.R, A.coeffs, A.M))


@dataclass(frozen=True)
class PreparedForm:
    mu: int
    unit: TruncatedSeries
    distinguished: tuple  # coefficients low degree first, monic, over W/p^(N - mu)
    p: int
    N: int

    @property
    def degree(self):
        return len(self.distinguished) - 1

    def distinguished_ints(self):
        if self.unit.R.f == 1:
            return [c[0] for c in self.distinguished]
        return [list(c) for c in self.distinguished]

    def reconstruct(self):
        """p^mu * u * h as a series at the original precision (p^N, T^M)."""
        R = WittRing(self.p, self.N, self.unit.R.f)
        M = self.unit.M
        u = [R(c) for c in self.unit.coeffs]
        h = [R(c) for c in self.distinguished]
        prod = _mul_lists(R, u, h, M)
        return TruncatedSeries.over(R, M, [R.scale(c, self.p**self.mu) for c in prod])


def is_distinguished(h, p):
    """h: coefficient tuples (or ints), low degree first."""
    hs = [c if isinstance(c, tuple) else (c,) for c in h]
    lead = hs[-1]
    if lead[0] != 1 or any(lead[1:]):
        return False
    return all(all(x % p == 0 for x in c) for c in hs[:-1])


def weierstrass_prepare(F, max_iter=None):
    """F = p^mu * u * h with u a unit series and h distinguished."""
    if F.is_zero():
        raise PrecisionTooLow("series is zero at the declared precision")
    mu = F.valuation()
    if mu >= F.N:
        raise PrecisionTooLow("p-adic valuation reaches the precision cap")
    Rg = WittRing(F.p, F.N - mu, F.R.f)
    G = [Rg(F.R.divide_by_p_power(c, mu)) for c in F.coeffs]
    s = next((i for i, c in enumerate(G) if Rg.is_unit(c)), None)
    if s is None:
        raise PrecisionTooLow("no unit coefficient within the T-window; Weierstrass degree unknown")
    M = F.M
    limit = max_iter or (Rg.N + 2)
    # Each step of the fixed point pulls truncation error down by s degrees
    # but multiplies it by P = 0 mod p, so s * (limit + 1) spare degrees
    # keep the window below M exact.
    W = M + s * (limit + 1)
    G = G + [Rg.zero] * (W - M)
    P = G[:s]
    Q = G[s:]
    Qinv = _inv_list(Rg, Q, W)
    one = [Rg.one] + [Rg.zero] * (W - 1)
    v = Qinv
    for it in range(limit + 1):
        Pv = _mul_lists(Rg, P, v, W + s) if s else [Rg.zero] * (W + s)
        shifted = Pv[s:s + W] + [Rg.zero] * max(0, W - len(Pv[s:s + W]))
        rhs = [Rg.sub(a, b) for a, b in zip(one, shifted)]
        nv = _mul_lists(Rg, Qinv, rhs, W)
        if nv == v:
            break
        v = nv
    else:
        raise AssertionError("Weierstrass fixed point did not converge")
    log.debug("Weierstrass iteration converged after %d steps", it)
    Gv = _mul_lists(Rg, G, v, W)
    h = tuple(Gv[:s]) + (Rg.one,)
    u = _inv_list(Rg, v, M)
    prepared = PreparedForm(mu, TruncatedSeries.over(Rg, M, u), h, F.p, F.N)
    if not is_distinguished(h, F.p):
        raise AssertionError("prepared polynomial is not distinguished")
    return prepared


@dataclass(frozen=True)
class RingClassification:
    flat_over_W: bool
    has_char0_point: bool
    modp_dimension: float  # int, or INFINITE

    def to_dict(self):
        dim = "infinite" if self.modp_dimension == INFINITE else int(self.modp_dimension)
        return {"flat_over_W": self.flat_over_W, "has_char0_point": self.has_char0_point, "modp_dimension": dim}


def classify_ring(mu, h, p):
    """Structure of W[[T]]/(p^mu h) for h distinguished (or the constant 1)."""
    if mu < 0:
        raise ValueError("mu must be non-negative")
    h = list(h) if not isinstance(h, int) else [h]
    while len(h) > 1 and (h[-1] == 0 or h[-1] == (0,)):
        h.pop()
    if not is_distinguished(h, p):
        raise NotDistinguished(f"{h} is not monic with non-leading coefficients divisible by {p}")
    deg = len(h) - 1
    if mu == 0 and deg == 0:
        raise DegenerateRing("W[[T]]/(1) is the zero ring")
    flat = mu == 0
    point = mu == 0 or deg >= 1
    dim = deg if mu == 0 else INFINITE
    return RingClassification(flat, point, dim)


def presentation_family(gen, rel):
    """The family of rings with ``gen`` generators and ``rel`` relations over W."""
    if gen < 0 or rel < 0:
        raise ValueError("ranks are non-negative")
    if gen >= 2 or rel >= 2:
        raise Unsupported("only presentations with at most one generator and one relation")
    if gen == 1 and rel == 1:
        return "W[[T]]/(p^μ h)"
    if gen == 1:
        return "W[[T]]"
    return "quotient of W"
