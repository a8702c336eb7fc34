"""The simplest cubic field Q(theta), f(theta) = 0, with its order-3 automorphism.

Coordinates of an element are (c0, c1, c2) in the power basis 1, theta,
theta^2.  Since disc(f) = l^2 with l prime, Z[theta] is the full ring of
integers, so integral elements are exactly integer coordinate vectors.
"""

import logging
from fractions import Fraction

import mpmath

from ..shanks import discriminant, shanks_polynomial

log = logging.getLogger(__name__)


class DiscriminantMismatch(ValueError):
    pass


class CubicField:
    def __init__(self, param, dps=30):
        self.param = param
        self.a = param.a
        self.ell = param.ell
        self.poly = shanks_polynomial(param)
        self.disc = discriminant(self.poly)
        if self.disc != self.ell**2:
            raise DiscriminantMismatch(f"disc(f) = {self.disc} differs from {self.ell}^2")
        # theta^3 = a theta^2 + b theta + 1
        self.b = self.a + 3
        for r in (1, -1):
            if self.poly(r) == 0:
                raise DiscriminantMismatch("f has a rational root")
        a, b = self.a, self.b
        s = [3, a, a * a + 2 * b]
        s.append(a * s[2] + b * s[1] + 3)
        s.append(a * s[3] + b * s[2] + s[1])
        self.power_sums = tuple(s)
        self._sigma_theta = self._compute_sigma_theta()
        self._sigma_theta2 = self.mul(self._sigma_theta, self._sigma_theta)
        if self.eval_poly_at(self._sigma_theta) != (0, 0, 0):
            raise AssertionError("sigma(theta) is not a root of f")
        self.dps = dps
        self._roots = None
        self._roots_dps = None

    def __repr__(self):
        return f"CubicField(a={self.a}, ell={self.ell})"

    # ---- arithmetic on coordinate tuples
    def mul_theta(self, x):
        d0, d1, d2 = x
        return (d2, d0 + self.b * d2, d1 + self.a * d2)

    def mul_matrix(self, x):
        """Columns are x, x*theta, x*theta^2."""
        c1 = tuple(x)
        c2 = self.mul_theta(c1)
        c3 = self.mul_theta(c2)
        return (c1, c2, c3)

    def mul(self, x, y):
        c1, c2, c3 = self.mul_matrix(x)
        return tuple(y[0] * c1[i] + y[1] * c2[i] + y[2] * c3[i] for i in range(3))

    def add(self, x, y):
        return tuple(u + v for u, v in zip(x, y))

    def sub(self, x, y):
        return tuple(u - v for u, v in zip(x, y))

    def norm(self, x):
        (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = self.mul_matrix(x)
        # determinant of the matrix with these columns
        return a0 * (b1 * c2 - b2 * c1) - b0 * (a1 * c2 - a2 * c1) + c0 * (a1 * b2 - a2 * b1)

    def trace(self, x):
        s = self.power_sums
        return x[0] * s[0] + x[1] * s[1] + x[2] * s[2]

    def inverse(self, x):
        """Exact inverse with Fraction coordinates (integral when x is a unit)."""
        cols = self.mul_matrix(x)
        m = [[Fraction(cols[j][i]) for j in range(3)] for i in range(3)]
        rhs = [Fraction(1), Fraction(0), Fraction(0)]
        sol = _solve3(m, rhs)
        return tuple(int(c) if c.denominator == 1 else c for c in sol)

    def power(self, x, e):
        if e < 0:
            x, e = self.inverse(x), -e
        result = (1, 0, 0)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def eval_poly_at(self, x):
        """f(x) reduced in the power basis."""
        x2 = self.mul(x, x)
        x3 = self.mul(x2, x)
        c0, c1, c2, _ = self.poly.coeffs
        return tuple(x3[i] + c2 * x2[i] + c1 * x[i] + (c0 if i == 0 else 0) for i in range(3))

    # ---- Galois action
    def _compute_sigma_theta(self):
        inv = self.inverse((1, 1, 0))
        if any(isinstance(c, Fraction) for c in inv):
            raise AssertionError("theta + 1 is not a unit")
        return tuple(-c for c in inv)

    def sigma(self, x, k=1):
        for _ in range(k % 3):
            st, st2 = self._sigma_theta, self._sigma_theta2
            x = tuple(x[0] * (i == 0) + x[1] * st[i] + x[2] * st2[i] for i in range(3))
        return x

    def sigma_residue(self, r, p):
        """Image root: sigma maps (p, theta - r) to (p, theta - r')."""
        return (-(1 + r) * pow(r, -1, p)) % p

    # ---- real embeddings
    def roots(self, dps=None):
        """Real roots (r0, r1, r2) at ``dps`` digits, ordered so sigma cycles them."""
        dps = dps or self.dps
        if self._roots is not None and self._roots_dps >= dps:
            return self._roots
        with mpmath.workdps(dps + 10):
            c0, c1, c2, c3 = self.poly.coeffs
            rts = mpmath.polyroots([c3, c2, c1, c0], maxsteps=200, extraprec=4 * dps)
            rts = sorted(mpmath.re(r) for r in rts)
            r0 = rts[0]
            s = lambda t: -1 / (1 + t)
            r1 = min(rts, key=lambda t: abs(t - s(r0)))
            r2 = min(rts, key=lambda t: abs(t - s(r1)))
            ordered = (r0, r1, r2)
        if len({mpmath.nstr(t, 15) for t in ordered}) != 3:
            raise AssertionError("root ordering failed")
        self._roots, self._roots_dps = ordered, dps
        return ordered

    def root_intervals(self, dps=None):
        """Rigorous mpmath.iv enclosures of the ordered roots."""
        dps = dps or self.dps
        pts = self.roots(dps)
        out = []
        with iv_dps(dps + 10), mpmath.workdps(dps + 10):
            for r in pts:
                eps = mpmath.mpf(10) ** (-dps) * (1 + abs(r))
                lo, hi = r - eps, r + eps
                flo = self._f_iv(mpmath.iv.mpf(lo))
                fhi = self._f_iv(mpmath.iv.mpf(hi))
                if not ((flo.b < 0 and fhi.a > 0) or (flo.a > 0 and fhi.b < 0)):
                    raise ArithmeticError("could not isolate root")
                out.append(mpmath.iv.mpf([lo, hi]))
        return tuple(out)

    def _f_iv(self, t):
        c0, c1, c2, _ = self.poly.coeffs
        return ((t + c2) * t + c1) * t + c0

    def embeddings(self, x, dps=None):
        return tuple(x[0] + x[1] * r + x[2] * r * r for r in self.roots(dps))

    def float_embeddings(self, x):
        return tuple(float(e) for e in self.embeddings(x))


class iv_dps:
    """Context manager setting the interval context precision."""

    def __init__(self, dps):
        self.dps = dps

    def __enter__(self):
        self.saved = mpmath.iv.dps
        mpmath.iv.dps = self.dps
        return mpmath.iv

    def __exit__(self, *exc):
        mpmath.iv.dps = self.saved
        return False


def _solve3(m, rhs):
    a = [row[:] + [r] for row, r in zip(m, rhs)]
    n = 3
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                k = a[i][c]
                a[i] = [x - k * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


class AlgebraicNumber:
    """An element of L with exact rational coordinates in 1, theta, theta^2."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("need three coordinates")
        self.coords = tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coords)

    @classmethod
    def theta(cls, field):
        return cls(field, (0, 1, 0))

    def _wrap(self, other):
        if isinstance(other, AlgebraicNumber):
            return other.coords
        return (other, 0, 0)

    def __add__(self, other):
        return AlgebraicNumber(self.field, self.field.add(self.coords, self._wrap(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraicNumber(self.field, self.field.sub(self.coords, self._wrap(other)))

    def __rsub__(self, other):
        return AlgebraicNumber(self.field, self.field.sub(self._wrap(other), self.coords))

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-c for c in self.coords))

    def __mul__(self, other):
        return AlgebraicNumber(self.field, self.field.mul(self.coords, self._wrap(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * AlgebraicNumber(self.field, self._wrap(other)).inverse()

    def __pow__(self, e):
        return AlgebraicNumber(self.field, self.field.power(self.coords, e))

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.coords == other.coords
        return self.coords == (other, 0, 0)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"AlgebraicNumber{self.coords}"

    def inverse(self):
        return AlgebraicNumber(self.field, self.field.inverse(self.coords))

    def norm(self):
        return self.field.norm(self.coords)

    def trace(self):
        return self.field.trace(self.coords)

    def sigma(self, k=1):
        return AlgebraicNumber(self.field, self.field.sigma(self.coords, k))

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)


def galois_sigma(x):
    """Apply theta -> -1/(1+theta) to an AlgebraicNumber."""
    return x.sigma()


def build_field(param, dps=30):
    field = CubicField(param, dps=dps)
    roots = field.roots()
    if any(abs(mpmath.im(r)) > 0 for r in roots):
        raise AssertionError("field is not totally real")
    log.debug("built %r", field)
    return field
