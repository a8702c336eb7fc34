"""Certified class groups of simplest cubic fields.

Outline:

* a small factor base of the degree-one primes over split p <= B0;
* relations (alpha) = prod P^v from short vectors of LLL-reduced ideals,
  tripled by applying the Galois automorphism;
* a descent certificate showing each prime of norm in (B0, M] (M the
  Minkowski bound) is a product of smaller primes in the class group, so the
  small factor base generates Cl;
* the tentative order from the HNF of the relation lattice is accepted only
  when h_tent * R(theta, theta+1) / (hR from the analytic formula) encloses 1.
  That quotient is an integer (relation index times unit index), so equality
  with 1 certifies h and the unit index in one go.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field as dc_field

import mpmath

from ..arith import hensel_root, poly_roots_mod_p, primes_up_to
from ..linalg import bareiss_det, hnf_mod_d, independent_rows_mod_p, smith_form
from .analytic import PrecisionExhausted, analytic_hr
from .ideals import ideal_mul, lll_reduce, prime_above, unit_ideal
from .units import unit_group

log = logging.getLogger(__name__)

_BIG_PRIME = (1 << 61) - 1


class RelationDeficit(RuntimeError):
    pass


def minkowski_bound(field):
    return 6 * field.ell / 27


def default_small_bound(field):
    M = minkowski_bound(field)
    return min(M, max(20.0, 3 * math.log(field.ell) ** 2))


class FactorBase:
    """Degree-one primes (p, r) over split rational primes p <= bound."""

    def __init__(self, field, bound):
        self.field = field
        self.bound = bound
        c = list(field.poly.coeffs)
        self.primes = []
        self.split_ps = []
        for p in primes_up_to(int(bound)):
            if p == field.ell:
                continue
            roots = poly_roots_mod_p(c, p)
            if len(roots) == 3:
                self.split_ps.append(p)
                for r in roots:
                    self.primes.append((p, r))
        self.index = {pr: i for i, pr in enumerate(self.primes)}
        self.roots_of = {}
        for p, r in self.primes:
            self.roots_of.setdefault(p, []).append(r)
        self._lift_cache = {}

    def __len__(self):
        return len(self.primes)

    def lifted_root(self, p, r, k):
        key = (p, r, k)
        if key not in self._lift_cache:
            self._lift_cache[key] = hensel_root(list(self.field.poly.coeffs), r, p, k)
        return self._lift_cache[key]

    def sigma_index(self, i):
        p, r = self.primes[i]
        return self.index[(p, self.field.sigma_residue(r, p))]


def split_primes_between(field, lo, hi):
    c = list(field.poly.coeffs)
    out = []
    for p in primes_up_to(int(hi)):
        if p <= lo or p == field.ell:
            continue
        roots = poly_roots_mod_p(c, p)
        if len(roots) == 3:
            out.append((p, roots))
    return out


def degree_one_valuation(field, alpha, p, r, k, lift):
    """v_P(alpha) for P = (p, theta - r), given v_p(N alpha) = k."""
    mod = p ** (k + 1)
    t = lift
    val = (alpha[0] + alpha[1] * t + alpha[2] * t * t) % mod
    if val == 0:
        return k + 1
    v = 0
    while val % p == 0:
        val //= p
        v += 1
    return v


def factor_over(fb, alpha, norm, allowed_ps):
    """Sparse valuation dict {index: v} of a primitive alpha, or None if not smooth.

    ``allowed_ps`` is an iterable of split rational primes; alpha must have
    norm supported on them.
    """
    n = abs(norm)
    split = []
    for p in allowed_ps:
        if n == 1:
            break
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            split.append((p, k))
    if n != 1:
        return None
    vals = {}
    field = fb.field
    for p, k in split:
        total = 0
        for r in fb.roots_of[p]:
            v = degree_one_valuation(field, alpha, p, r, k, fb.lifted_root(p, r, k + 1))
            if v:
                vals[fb.index[(p, r)]] = v
                total += v
        if total != k:
            raise AssertionError(f"valuations at {p} do not add up to v_p(N) = {k}")
    return vals


def is_primitive(alpha):
    return math.gcd(math.gcd(alpha[0], alpha[1]), alpha[2]) == 1


def short_vectors(basis, box):
    """Integer combinations of ``basis`` with coefficients in [-box, box], one per sign pair."""
    rng = range(-box, box + 1)
    for x in itertools.product(rng, repeat=len(basis)):
        nz = next((c for c in x if c), 0)
        if nz <= 0:
            continue
        yield tuple(sum(c * b[i] for c, b in zip(x, basis)) for i in range(3))


@dataclass
class Relation:
    alpha: tuple
    vals: dict


@dataclass
class DescentStep:
    p: int
    r: int
    alpha: tuple
    cofactor: dict  # rational prime -> exponent in |N(alpha)| / p


@dataclass
class ClassGroup:
    field: object
    invariants: list  # nontrivial d_1 | d_2 | ...
    h: int
    fb: object
    relations: list
    descent: list
    regulator: object
    analytic: object
    unit_index: int
    seed: int
    # internal structure for coordinates
    H: list = dc_field(repr=False, default=None)
    big_cols: list = dc_field(repr=False, default=None)
    expr: list = dc_field(repr=False, default=None)  # per FB index: coefficients over big_cols
    snf_diag: list = dc_field(repr=False, default=None)
    V: list = dc_field(repr=False, default=None)
    Vinv: list = dc_field(repr=False, default=None)
    snf_offset: int = 0  # leading trivial SNF factors skipped

    @property
    def rank_over(self):
        return lambda p: sum(1 for d in self.invariants if d % p == 0)

    def p_rank(self, p):
        return sum(1 for d in self.invariants if d % p == 0)

    def coordinates(self, exps):
        """SNF coordinates (mod d_i) of the class of prod P_i^{exps[i]}."""
        if not self.big_cols:
            return []
        y = [0] * len(self.big_cols)
        for i, e in (exps.items() if isinstance(exps, dict) else enumerate(exps)):
            if e:
                for k, c in enumerate(self.expr[i]):
                    if c:
                        y[k] += e * c
        z = []
        for i, d in enumerate(self.invariants):
            col = self.snf_offset + i
            z.append(sum(y[k] * self.V[k][col] for k in range(len(y))) % d)
        return z

    def generator_exponents(self, i):
        """Exponent vector over the factor base of the i-th generator."""
        row = self.Vinv[self.snf_offset + i]
        exps = [0] * len(self.fb)
        for k, c in enumerate(row):
            exps[self.big_cols[k]] = c % self.h
        return exps

    def is_principal_vector(self, exps):
        return all(c == 0 for c in self.coordinates(exps))


def _collect(field, fb, rng, rows_by_alpha, target, box, max_tries):
    """Add relations until ``target`` rows are present or the budget is spent."""
    ps = fb.split_ps
    ell = field.ell
    tries = 0
    O_basis = lll_reduce(field, unit_ideal(field).basis)
    ideals = [None]
    while len(rows_by_alpha) * 3 < target and tries < max_tries:
        tries += 1
        if tries == 1:
            basis, nA = O_basis, 1
        else:
            k = rng.randint(1, 3)
            A = unit_ideal(field)
            for _ in range(k):
                p, r = fb.primes[rng.randrange(len(fb))]
                A = ideal_mul(A, prime_above(field, p, r))
            basis, nA = lll_reduce(field, A.basis), A.norm
        for alpha in short_vectors(basis, box if tries > 1 else box + 2):
            if not is_primitive(alpha):
                continue
            key = alpha
            if key in rows_by_alpha or tuple(-c for c in alpha) in rows_by_alpha:
                continue
            N = field.norm(alpha)
            if N == 0 or N % ell == 0:
                continue
            vals = factor_over(fb, alpha, N, ps)
            if vals is None:
                continue
            rel = [Relation(alpha, vals)]
            for k in (1, 2):
                beta = field.sigma(alpha, k)
                rel.append(Relation(beta, factor_over(fb, beta, N, ps)))
            rows_by_alpha[key] = rel
    return tries


def _dense(rel, n):
    row = [0] * n
    for i, v in rel.vals.items():
        row[i] = v
    return row


def _descent(field, fb, M, max_box=4):
    """Express every degree-one prime of norm in (B0, M] through smaller primes."""
    steps = []
    big = split_primes_between(field, fb.bound, M)
    allowed = list(fb.split_ps)
    ell = field.ell
    for p, roots in big:
        r = roots[0]
        P = prime_above(field, p, r)
        basis = lll_reduce(field, P.basis)
        found = None
        for box in range(1, max_box + 1):
            for alpha in short_vectors(basis, box):
                if not is_primitive(alpha):
                    continue
                N = abs(field.norm(alpha))
                if N % p or (N // p) % p == 0 or N % ell == 0:
                    continue
                m = N // p
                cof = {}
                for q in allowed:
                    if m == 1:
                        break
                    if m % q == 0:
                        e = 0
                        while m % q == 0:
                            m //= q
                            e += 1
                        cof[q] = e
                if m == 1:
                    found = DescentStep(p, r, alpha, cof)
                    break
            if found:
                break
        if found is None:
            raise RelationDeficit(f"descent failed for the prime above {p}")
        steps.append(found)
        allowed.append(p)
    return steps


def verify_descent(field, fb, steps):
    """Re-check each descent step exactly."""
    seen = set(fb.split_ps)
    for st in steps:
        N = abs(field.norm(st.alpha))
        P = prime_above(field, st.p, st.r)
        if not P.contains(st.alpha):
            return False
        m = N // st.p
        if N % st.p or m % st.p == 0:
            return False
        for q, e in st.cofactor.items():
            if q not in seen:
                return False
            m //= q**e
        if m != 1:
            return False
        seen.add(st.p)
    return True


def _structure(cg_H, n, h):
    """Eliminate unit-diagonal columns, then SNF the remainder."""
    big = [j for j in range(n) if cg_H[j][j] != 1]
    pos = {j: k for k, j in enumerate(big)}
    nb = len(big)
    expr = [None] * n
    for j in range(n - 1, -1, -1):
        if j in pos:
            v = [0] * nb
            v[pos[j]] = 1
            expr[j] = v
        else:
            v = [0] * nb
            row = cg_H[j]
            for k in range(j + 1, n):
                c = row[k]
                if c:
                    ek = expr[k]
                    for t in range(nb):
                        if ek[t]:
                            v[t] -= c * ek[t]
            expr[j] = [x % h for x in v]
    rels = []
    for j in big:
        row = cg_H[j]
        v = [0] * nb
        for k in range(j, n):
            c = row[k]
            if c:
                ek = expr[k]
                for t in range(nb):
                    v[t] += c * ek[t]
        rels.append([x % h for x in v])
    for t in range(nb):
        rels.append([h if s == t else 0 for s in range(nb)])
    diag, V, Vinv = smith_form(rels, nb)
    return big, expr, diag, V, Vinv


def class_group(field, units=None, seed=0, small_bound=None, precision=30, escalations=3, box=2):
    """Certified class group of the simplest cubic field."""
    rng = random.Random(seed)
    units = units or unit_group(field, precision=precision)
    M = minkowski_bound(field)
    B0 = small_bound if small_bound is not None else default_small_bound(field)
    B0 = min(B0, M)
    fb = FactorBase(field, B0)
    n = len(fb)
    log.info("ell=%d: Minkowski bound %.1f, small bound %.1f, %d factor-base primes", field.ell, M, B0, n)
    descent = _descent(field, fb, M)
    log.info("descent certificate covers %d rational primes in (%.1f, %.1f]", len(descent), B0, M)
    hr = analytic_hr(field, precision)
    reg = units.regulator

    if n == 0:
        ratio = reg / hr
        if not (0.5 < ratio.a and ratio.b < 1.5):
            raise RelationDeficit(f"empty factor base but R/hR = {ratio}")
        return ClassGroup(field, [], 1, fb, [], descent, reg, hr, 1, seed, H=[], big_cols=[], expr=[],
                          snf_diag=[], V=[], Vinv=[])

    rows_by_alpha = {}
    target = n + 10 + n // 5
    # First reach full rank; the budget here is generous because rare primes
    # near the bound need several random ideals before they show up.
    dense = []
    for _ in range(10 * (escalations + 1)):
        _collect(field, fb, rng, rows_by_alpha, target, box, max_tries=200 + 10 * n)
        dense = [_dense(r, n) for group in rows_by_alpha.values() for r in group]
        idx = independent_rows_mod_p(dense, _BIG_PRIME)
        if len(idx) == n:
            break
        log.info("relation rank %d < %d; collecting more", len(idx), n)
        target = len(dense) + n
    else:
        raise RelationDeficit(f"relation matrix stuck at rank {len(idx)} < {n}")
    D = abs(bareiss_det([dense[i] for i in idx]))
    h_tent = None
    for attempt in range(escalations + 1):
        if attempt:
            target = len(dense) + n
            _collect(field, fb, rng, rows_by_alpha, target, box + attempt, max_tries=200 * attempt + 10 * n)
        rels = [r for group in rows_by_alpha.values() for r in group]
        dense = [_dense(r, n) for r in rels]
        H = hnf_mod_d(dense, n, D)
        h_tent = math.prod(H[j][j] for j in range(n))
        ratio = h_tent * reg / hr
        log.info("attempt %d: %d relations, tentative h = %d, ratio %s", attempt, len(rels), h_tent, ratio)
        if ratio.a > 0.5 and ratio.b < 1.5:
            big, expr, diag, V, Vinv = _structure(H, n, h_tent)
            offset = sum(1 for d in diag if d == 1)
            inv = [d for d in diag if d != 1]
            if math.prod(inv) != h_tent:
                raise AssertionError("SNF does not reproduce the HNF determinant")
            return ClassGroup(field, inv, h_tent, fb, rels, descent, reg, hr, 1, seed, H=H, big_cols=big,
                              expr=expr, snf_diag=diag, V=V, Vinv=Vinv, snf_offset=offset)
        if ratio.b < 0.5:
            raise AssertionError(f"certification ratio {ratio} below 1: factor base does not generate")
        if ratio.a < 1.5 < ratio.b or ratio.a < 0.5:
            raise PrecisionExhausted(f"ratio interval {ratio} too wide")
        D = h_tent
    raise RelationDeficit(f"tentative h = {h_tent} not certified after {escalations} escalations")


def class_group_action(cg, p):
    """Matrix over F_p of sigma on Cl / p Cl in the SNF generator basis (columns = images)."""
    idx = [i for i, d in enumerate(cg.invariants) if d % p == 0]
    if not idx:
        return []
    fb = cg.fb
    cols = []
    for i in idx:
        exps = cg.generator_exponents(i)
        image = [0] * len(fb)
        for j, e in enumerate(exps):
            if e:
                image[fb.sigma_index(j)] += e
        z = cg.coordinates(image)
        # reduce the d_i-coordinate to Cl/p: multiply by nothing, just mod p
        cols.append([z[k] % p for k in idx])
    return [[cols[c][r] for c in range(len(idx))] for r in range(len(idx))]
