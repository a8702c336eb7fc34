"""Unramified quadratic extensions of L via the 2-Selmer group, and A_4 counts.

Every alpha with (alpha) = b^2 is, modulo squares, a product of -1, theta,
theta+1 and a combination prod alpha_i^{c_i} of relation elements with
sum c_i v(alpha_i) = 0 mod 2; this uses that the certified relations span the
full relation lattice.  Formal combinations are separated modulo squares by
quadratic residue symbols at auxiliary split primes.  L(sqrt(alpha))/L is
unramified iff alpha is totally positive and, at the inert prime 2, a square
modulo 4.  Both conditions are F_2-linear.
"""

import logging
from dataclasses import dataclass

import mpmath

from ..arith import legendre, poly_roots_mod_p, primes_up_to
from ..linalg import left_kernel_mod_p, nullspace_mod_p, rank_mod_p
from ..modrep import CyclicActionModule, decompose
from .classgroup import class_group_action
from .units import MINUS_ONE, THETA, THETA_PLUS_ONE

log = logging.getLogger(__name__)


class SelmerInconclusive(ArithmeticError):
    pass


class ParityViolation(AssertionError):
    pass


@dataclass
class KummerClass:
    """Formal product of field elements representing a class in L^*/L^*2."""

    factors: list  # list of coordinate tuples, each to the first power
    signature: tuple  # quadratic-character vector separating square classes

    def value(self, field):
        from .field import AlgebraicNumber

        x = (1, 0, 0)
        for a in self.factors:
            x = field.mul(x, a)
        return AlgebraicNumber(field, x)


def sign_vector(field, x, dps=None):
    dps = dps or field.dps
    out = []
    with mpmath.workdps(dps):
        for e in field.embeddings(x, dps):
            if abs(e) < mpmath.mpf(10) ** (-dps // 2):
                raise SelmerInconclusive("embedding too close to zero to read its sign")
            out.append(1 if e < 0 else 0)
    return out


def _mod4_class(field, x):
    """Image of a 2-unit in (O/4)^*/squares = (1 + 2O)/(1 + 4O) = F_2^3."""
    y = tuple(c % 4 for c in x)
    if all(c % 2 == 0 for c in y):
        raise ValueError("element is not a 2-unit")
    z = (1, 0, 0)
    for _ in range(7):  # |F_8^*| = 7
        z = tuple(c % 4 for c in field.mul(z, y))
    if any(c % 2 for c in (z[0] - 1, z[1], z[2])):
        raise AssertionError("u^7 is not 1 mod 2")
    return [((z[0] - 1) // 2) % 2, (z[1] // 2) % 2, (z[2] // 2) % 2]


def _local_vector(field, x):
    return sign_vector(field, x) + _mod4_class(field, x)


def _aux_characters(field, start, count_primes):
    """Yield (q, r) for split primes q > start."""
    c = list(field.poly.coeffs)
    q = int(start) + 1
    found = 0
    limit = max(1000, 4 * int(start) + 1000)
    while found < count_primes:
        for p in primes_up_to(limit):
            if p < q or p == field.ell:
                continue
            roots = poly_roots_mod_p(c, p)
            if len(roots) == 3:
                for r in roots:
                    yield p, r
                found += 1
                if found >= count_primes:
                    return
            q = p + 1
        limit *= 2


def _char(q, r, x):
    v = (x[0] + x[1] * r + x[2] * r * r) % q
    s = legendre(v, q)
    if s == 0:
        raise AssertionError("auxiliary prime divides an element")
    return 0 if s == 1 else 1


def selmer_space(field, cg, max_aux=400):
    """Basis data for the 2-Selmer group: returns (elements, coefficient basis, characters)."""
    n = len(cg.fb)
    rels = cg.relations
    r2 = cg.p_rank(2)
    if n:
        vals = [[rel.vals.get(i, 0) % 2 for i in range(n)] for rel in rels]
        kernel = left_kernel_mod_p(vals, 2)
    else:
        kernel = []
    elems = [rel.alpha for rel in rels] + [MINUS_ONE, THETA, THETA_PLUS_ONE]
    nr = len(rels)
    cands = [c + [0, 0, 0] for c in kernel]
    for j in range(3):
        v = [0] * (nr + 3)
        v[nr + j] = 1
        cands.append(v)
    target = r2 + 3
    chars = []
    char_cols = []  # per element, list of character values
    per_elem = [[] for _ in elems]
    rank = 0
    for q, r in _aux_characters(field, cg.fb.bound, max_aux):
        chars.append((q, r))
        for k, x in enumerate(elems):
            per_elem[k].append(_char(q, r, x))
        if len(chars) % 6 == 0 or len(chars) >= 3 * max_aux:
            img = _images(cands, per_elem, len(chars))
            rank = rank_mod_p(img, 2, len(chars))
            if rank > target:
                raise SelmerInconclusive(f"character rank {rank} exceeds 2-rank + 3 = {target}")
            if rank == target:
                break
    else:
        raise SelmerInconclusive(f"characters reach rank {rank} < {target}")
    return elems, cands, per_elem, chars, target


def _images(cands, per_elem, nchars):
    out = []
    for c in cands:
        row = [0] * nchars
        for k, bit in enumerate(c):
            if bit:
                pe = per_elem[k]
                for t in range(nchars):
                    row[t] ^= pe[t]
        out.append(row)
    return out


def _combine(cands, coeffs):
    v = [0] * len(cands[0])
    for a, c in zip(coeffs, cands):
        if a:
            v = [x ^ y for x, y in zip(v, c)]
    return v


def unramified_quadratic_extensions(field, cg, max_aux=400):
    """All 2^r - 1 nontrivial Kummer classes of unramified quadratic extensions (r = 2-rank)."""
    r2 = cg.p_rank(2)
    if r2 == 0:
        return []
    elems, cands, per_elem, chars, target = selmer_space(field, cg, max_aux)
    nchars = len(chars)
    img = _images(cands, per_elem, nchars)
    local_per_elem = [_local_vector(field, x) for x in elems]
    local = _images(cands, local_per_elem, 6)
    # coefficient vectors a with local(sum a_i cand_i) = 0, modulo those that are squares
    total = [l + i for l, i in zip(local, img)]
    m = len(cands)
    loc_ker = left_kernel_mod_p(local, 2)
    sq_ker = left_kernel_mod_p(total, 2)
    dim = len(loc_ker) - len(sq_ker)
    if dim != r2:
        raise SelmerInconclusive(f"unramified subspace has dimension {dim}, expected {r2}")
    # pick loc_ker vectors independent modulo sq_ker via their character images
    basis = []
    chosen_imgs = []
    for a in loc_ker:
        row = _combine(img, a)
        if rank_mod_p(chosen_imgs + [row], 2, nchars) > len(chosen_imgs):
            basis.append(a)
            chosen_imgs.append(row)
        if len(basis) == r2:
            break
    out = []
    for mask in range(1, 2**r2):
        a = [0] * m
        for b in range(r2):
            if mask >> b & 1:
                a = [x ^ y for x, y in zip(a, basis[b])]
        c = _combine(cands, a)
        factors = [elems[k] for k, bit in enumerate(c) if bit]
        sig = tuple(_combine(img, a))
        out.append(KummerClass(factors, sig))
    return out


def count_A4_extensions(field, cg):
    r2 = cg.p_rank(2)
    if r2 % 2:
        raise ParityViolation(f"2-rank {r2} is odd")
    if r2 == 0:
        return 0
    T = class_group_action(cg, 2)
    dec = decompose(CyclicActionModule(2, T))
    if dec.m_trivial:
        raise ParityViolation(f"trivial summand of multiplicity {dec.m_trivial} in Cl/2")
    return dec.m_U2
