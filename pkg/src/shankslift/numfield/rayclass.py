"""Ray class groups of L for moduli supported above 3 and l.

The modulus is 3^c (3 is inert, e = 1) times the ramified prime over l when
requested, with c = 1 + floor(3 e / 2) = 2 by default.  The ray class group is
presented as

    (Z^n + (O/m)^*) / < (v(alpha), -[alpha]) , (0, [units]) , orders >

using the certified relations of the class group, which is the exact sequence
(O/m)^*/U -> Cl_m -> Cl -> 1 made concrete.
"""

import logging
import math
from dataclasses import dataclass

from ..arith import primitive_root
from ..linalg import hnf_mod_d, smith_form
from .units import MINUS_ONE, THETA, THETA_PLUS_ONE

log = logging.getLogger(__name__)


def default_three_exponent(e=1):
    return 1 + (3 * e) // 2


@dataclass
class RayClassData:
    modulus: dict  # {"three_exponent": c, "ell": bool, "real_places": []}
    modulus_ideal: object
    rank3: int
    invariants: list
    order: int
    residue_structure: list  # SNF of (O/m)^*
    residue_order: int
    unit_image_order: int
    unit_image_rank3: int
    cardinality_check: bool


class _ResidueCoords:
    """Discrete-log coordinates on (O/3^c)^* x (O/l)^*."""

    def __init__(self, field, c, include_ell):
        self.field = field
        self.c = c
        self.include_ell = include_ell
        f3 = [x % 3 for x in field.poly.coeffs]
        if any(sum(f3[i] * r**i for i in range(4)) % 3 == 0 for r in range(3)):
            raise AssertionError("3 is not inert")
        # F_27^* cyclic of order 26: table of powers of a generator
        elems = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
        for g in elems:
            if g == (0, 0, 0):
                continue
            if self._pow_mod(g, 13, 3) != (1, 0, 0) and self._pow_mod(g, 2, 3) != (1, 0, 0):
                break
        self.dlog27 = {}
        x = (1, 0, 0)
        for k in range(26):
            self.dlog27[x] = k
            x = self._mod(field.mul(x, g), 3)
        if len(self.dlog27) != 26:
            raise AssertionError("generator search in F_27 failed")
        self.orders = [26] + [3 ** (c - 1)] * 3 if c > 1 else [26]
        if include_ell:
            ell = field.ell
            self.r_ell = next(r for r in range(ell) if (r * r * r - field.a * r * r - (field.a + 3) * r - 1) % ell == 0)
            g = primitive_root(ell)
            self.dlog_ell = [0] * ell
            x = 1
            for k in range(ell - 1):
                self.dlog_ell[x] = k
                x = x * g % ell
            self.orders.append(ell - 1)

    def _mod(self, x, m):
        return tuple(c % m for c in x)

    def _pow_mod(self, x, e, m):
        result = (1, 0, 0)
        while e:
            if e & 1:
                result = self._mod(self.field.mul(result, x), m)
            x = self._mod(self.field.mul(x, x), m)
            e >>= 1
        return result

    def _log_one_plus_3(self, y):
        """Coordinates of log(y)/3 mod 3^(c-1) for y = 1 mod 3."""
        c = self.c
        mod = 3**c
        z = (y[0] - 1, y[1], y[2])  # z = 3x
        acc = [0, 0, 0]
        k = 1
        while True:
            v = 0
            kk = k
            while kk % 3 == 0:
                kk //= 3
                v += 1
            if k - v >= c:
                if k > 3 * c + 3:
                    break
                k += 1
                continue
            wmod = 3 ** (c + v)
            zk = self._pow_mod(z, k, wmod)
            inv = pow(kk, -1, mod)
            sign = 1 if k % 2 else -1
            for i in range(3):
                if zk[i] % 3**v:
                    raise AssertionError("log series term not divisible")
                acc[i] = (acc[i] + sign * (zk[i] // 3**v) * inv) % mod
            k += 1
        if any(a % 3 for a in acc):
            raise AssertionError("log of a 1-unit not divisible by 3")
        return [(a // 3) % 3 ** (c - 1) for a in acc]

    def coords(self, u):
        a3 = self._mod(u, 3)
        if a3 == (0, 0, 0):
            raise ValueError("element not coprime to 3")
        out = [self.dlog27[a3]]
        if self.c > 1:
            y = self._pow_mod(self._mod(u, 3**self.c), 26, 3**self.c)
            out += self._log_one_plus_3(y)
        if self.include_ell:
            ell = self.field.ell
            t = self.r_ell
            val = (u[0] + u[1] * t + u[2] * t * t) % ell
            if val == 0:
                raise ValueError("element not coprime to l")
            out.append(self.dlog_ell[val])
        return out


def _order_from_rows(rows, ncols, D):
    H = hnf_mod_d(rows, ncols, D)
    return math.prod(H[i][i] for i in range(ncols)), H


def ray_class_3rank(field, cg, include_ell=False, three_exponent=None):
    c = three_exponent if three_exponent is not None else default_three_exponent(1)
    R = _ResidueCoords(field, c, include_ell)
    k = len(R.orders)
    n = len(cg.fb)
    order_rows = []
    for j, o in enumerate(R.orders):
        row = [0] * (n + k)
        row[n + j] = o
        order_rows.append(row)
    rows = []
    for rel in cg.relations:
        row = [0] * (n + k)
        for i, v in rel.vals.items():
            row[i] = v
        for j, x in enumerate(R.coords(rel.alpha)):
            row[n + j] = -x % R.orders[j]
        rows.append(row)
    unit_rows = [R.coords(u) for u in (MINUS_ONE, THETA, THETA_PLUS_ONE)]
    rows += [[0] * n + u for u in unit_rows] + order_rows

    res_order = math.prod(R.orders)
    res_diag, _, _ = smith_form([r[n:] for r in order_rows], k)
    # (O/m)^* / image of units
    quot_order, _ = _order_from_rows(unit_rows + [r[n:] for r in order_rows], k, res_order)
    unit_image = res_order // quot_order
    Dm = cg.h * res_order
    if n:
        H = hnf_mod_d(rows, n + k, Dm)
        order = math.prod(H[i][i] for i in range(n + k))
        from .classgroup import _structure

        _, _, diag, _, _ = _structure(H, n + k, order)
    else:
        rows_k = [r[n:] for r in rows]
        order, H = _order_from_rows(rows_k, k, Dm)
        diag, _, _ = smith_form(H, k)
    invariants = [d for d in diag if d not in (0, 1)]
    rank3 = sum(1 for d in invariants if d % 3 == 0)
    urank_rows = [r[:] for r in unit_rows]
    udiag, _, _ = smith_form(urank_rows + [r[n:] for r in order_rows], k)
    res3 = sum(1 for d in res_diag if d % 3 == 0)
    quot3 = sum(1 for d in udiag if d and d % 3 == 0 and d != 1)
    check = order == cg.h * res_order // unit_image
    if not check:
        log.error("ray class cardinality %d != %d * %d / %d", order, cg.h, res_order, unit_image)
    mod_ideal = {"three_exponent": c, "ell": include_ell, "real_places": []}
    return RayClassData(
        modulus=mod_ideal,
        modulus_ideal=_modulus_ideal(field, c, include_ell),
        rank3=rank3,
        invariants=invariants,
        order=order,
        residue_structure=[d for d in res_diag if d != 1],
        residue_order=res_order,
        unit_image_order=unit_image,
        unit_image_rank3=res3 - quot3,
        cardinality_check=check,
    )


def _modulus_ideal(field, c, include_ell):
    from .ideals import IdealHNF, factor_rational_prime, ideal_mul

    q = 3**c
    m = IdealHNF(field, ((q, 0, 0), (0, q, 0), (0, 0, q)))
    if include_ell:
        lp = factor_rational_prime(field, field.ell)[0][0]
        m = ideal_mul(m, lp)
    return m
