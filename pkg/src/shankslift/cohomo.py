"""Tame local cohomology of Ad^0 at a place v != p.

The tame quotient of the local Galois group is topologically generated by a
Frobenius lift sigma and an inertia generator tau with sigma tau sigma^-1 =
tau^v.  A 1-cocycle is determined by A = c(sigma), B = c(tau); applying the
Fox derivatives of the relator sigma tau sigma^-1 tau^-v gives the linear
condition

    (1 - T^v) A + (S - N_v(T)) B = 0,    N_v(T) = 1 + T + ... + T^(v-1),

with S, T the action matrices.  Coboundaries are ((S - 1) m, (T - 1) m).
H^2 is computed by local duality as H^0 of the twisted dual module.

Module elements are lists of WittRing(p, 1, f) elements; matrices act on
column vectors.
"""

import logging
from dataclasses import dataclass, field as dc_field

from .linalg import (
    field_nullspace,
    field_rank,
    field_solve,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    mat_transpose,
    mat_vec,
)
from .rings import WittRing

log = logging.getLogger(__name__)


class Singular(ValueError):
    pass


class RelationViolated(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class MissingFrobenius(KeyError):
    pass


# ----------------------------------------------------------------- Ad^0

def _mat2(K, M):
    return [[K(x) if not isinstance(x, tuple) else x for x in row] for row in M]


def _det2(K, M):
    return K.sub(K.mul(M[0][0], M[1][1]), K.mul(M[0][1], M[1][0]))


def _inv2(K, M):
    d = _det2(K, M)
    if K.is_zero(d):
        raise Singular("matrix is not invertible")
    di = K.inv(d)
    return [[K.mul(M[1][1], di), K.neg(K.mul(M[0][1], di))], [K.neg(K.mul(M[1][0], di)), K.mul(M[0][0], di)]]


def ad0_basis(K):
    z, o = K.zero, K.one
    e = [[z, o], [z, z]]
    h = [[o, z], [z, K.neg(o)]]
    f = [[z, z], [o, z]]
    return [e, h, f]


def ad0_coords(K, X):
    """(e, h, f) coordinates of a trace-zero 2x2 matrix."""
    return [X[0][1], X[0][0], X[1][0]]


def ad0_action(M, K):
    """3x3 matrix of X -> M X M^-1 on the basis e, h, f."""
    M = _mat2(K, M)
    Mi = _inv2(K, M)
    cols = []
    for B in ad0_basis(K):
        X = mat_mul(K, mat_mul(K, M, B), Mi)
        cols.append(ad0_coords(K, X))
    return [[cols[j][i] for j in range(3)] for i in range(3)]


# ------------------------------------------------------------ local datum

def norm_operator(K, T, v):
    """N_v(T) = sum_{i<v} T^i."""
    n = len(T)
    acc = [[K.zero] * n for _ in range(n)]
    P = mat_identity(K, n)
    for _ in range(v):
        acc = [[K.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(acc, P)]
        P = mat_mul(K, P, T)
    return acc


@dataclass
class TameLocalDatum:
    """Frobenius and inertia acting on a module over F_{p^f} (Ad^0 unless built raw)."""

    v: int
    K: object
    S: list
    T: list
    sigma_img: list = None
    tau_img: list = None
    label: str = ""
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.v % self.K.p == 0:
            raise ValueError("v must differ from p")
        K = self.K
        lhs = mat_mul(K, mat_mul(K, self.S, self.T), mat_inverse(K, self.S))
        if lhs != mat_pow(K, self.T, self.v):
            raise RelationViolated("S T S^-1 != T^v on the module")

    @property
    def dim(self):
        return len(self.S)

    @classmethod
    def from_images(cls, v, p, sigma_img, tau_img, f=1, label=""):
        K = WittRing(p, 1, f)
        s, t = _mat2(K, sigma_img), _mat2(K, tau_img)
        return cls(v, K, ad0_action(s, K), ad0_action(t, K), s, t, label)


def shape_datum(shape, v, p, f=1):
    """The residual local shapes used for the auxiliary and ramified places."""
    if shape == "nice":
        if (v - 1) % p == 0 or (v + 1) % p == 0:
            raise ValueError("nice needs v != +-1 mod p")
        return TameLocalDatum.from_images(v, p, [[v, 0], [0, 1]], [[1, 0], [0, 1]], f, "nice")
    if shape == "c3":
        if p != 3 or v % 3 != 1:
            raise ValueError("c3 needs p = 3 and v = 1 mod 3")
        return TameLocalDatum.from_images(v, p, [[1, 1], [0, 1]], [[1, 0], [0, 1]], f, "c3")
    if shape == "ell-unipotent":
        return TameLocalDatum.from_images(v, p, [[1, 0], [0, 1]], [[1, 1], [0, 1]], f, "ell-unipotent")
    raise ValueError(f"unknown shape {shape}")


def _stack(*blocks):
    return [row for b in blocks for row in b]


def h0_dim(datum):
    K, n = datum.K, datum.dim
    I = mat_identity(K, n)
    M = _stack(mat_sub(K, datum.S, I), mat_sub(K, datum.T, I))
    return n - field_rank(K, M, n)


def cocycle_matrix(datum):
    """Matrix of (A, B) -> (1 - T^v) A + (S - N_v) B, of size n x 2n."""
    K, n = datum.K, datum.dim
    I = mat_identity(K, n)
    left = mat_sub(K, I, mat_pow(K, datum.T, datum.v))
    right = mat_sub(K, datum.S, norm_operator(K, datum.T, datum.v))
    return [l + r for l, r in zip(left, right)]


def is_cocycle(datum, A, B):
    K = datum.K
    val = mat_vec(K, cocycle_matrix(datum), list(A) + list(B))
    return all(K.is_zero(x) for x in val)


def coboundary(datum, m):
    K, n = datum.K, datum.dim
    I = mat_identity(K, n)
    return mat_vec(K, mat_sub(K, datum.S, I), m), mat_vec(K, mat_sub(K, datum.T, I), m)


def _coboundary_span(datum):
    K, n = datum.K, datum.dim
    I = mat_identity(K, n)
    basis = []
    for j in range(n):
        m = [K.one if i == j else K.zero for i in range(n)]
        a, b = coboundary(datum, m)
        basis.append(a + b)
    return basis


def cocycle_space(datum):
    K, n = datum.K, datum.dim
    return field_nullspace(K, cocycle_matrix(datum), 2 * n)


def h1_dim(datum, check_euler=True):
    K, n = datum.K, datum.dim
    z1 = len(cocycle_space(datum))
    b1 = field_rank(K, _coboundary_span(datum), 2 * n)
    h1 = z1 - b1
    if check_euler:
        e = h0_dim(datum) + h2_dim(datum)
        if e != h1:
            raise AssertionError(f"Euler characteristic fails: h1={h1}, h0+h2={e}")
    return h1


def dual_datum(datum):
    """Hom(M, mu_p): sigma acts through v * S^{-T}, tau through T^{-T}."""
    K = datum.K
    Sd = mat_scale(K, mat_transpose(mat_inverse(K, datum.S)), K(datum.v))
    Td = mat_transpose(mat_inverse(K, datum.T))
    return TameLocalDatum(datum.v, K, Sd, Td, label=(datum.label + "*"), meta={"dual_of": datum.label})


def h2_dim(datum):
    return h0_dim(dual_datum(datum))


def dims(datum):
    return h0_dim(datum), h1_dim(datum), h2_dim(datum)


def in_h1_span(datum, vectors, candidate):
    """Whether candidate (as a 2n-vector) lies in span(vectors) + coboundaries."""
    K, n = datum.K, datum.dim
    span = list(vectors) + _coboundary_span(datum)
    if not span:
        return all(K.is_zero(x) for x in candidate)
    cols = [[span[j][i] for j in range(len(span))] for i in range(2 * n)]
    return field_solve(K, cols, list(candidate), len(span)) is not None


def h1_unramified(datum):
    """Basis of the classes with B = 0, as (A, B) pairs modulo coboundaries."""
    K, n = datum.K, datum.dim
    I = mat_identity(K, n)
    fixed = field_nullspace(K, mat_sub(K, datum.T, I), n)  # M^I
    basis = []
    for A in fixed:
        cand = A + [K.zero] * n
        if not in_h1_span(datum, basis, cand):
            basis.append(cand)
    return [(b[:n], b[n:]) for b in basis]


def verify_span(datum, candidate, expected_dim):
    """True iff the cocycle is a nonzero class and its span has the expected dimension."""
    A, B = candidate
    if not is_cocycle(datum, A, B):
        raise NotACocycle("candidate violates the cocycle relation")
    nonzero = not in_h1_span(datum, [], list(A) + list(B))
    span_dim = 1 if nonzero else 0
    return nonzero and span_dim == expected_dim


def r_v_cocycle(datum):
    """The class tau -> e, sigma -> 0 used at nice and C^(3) places."""
    K = datum.K
    return [K.zero] * 3, [K.one, K.zero, K.zero]


def real_place_dims(p, f=1, trivial_action=True, action=None):
    """(h0, h1, h2) for Z/2 acting on Ad^0 over F_{p^f}, p odd."""
    if p == 2:
        raise ValueError("real places need p odd")
    K = WittRing(p, 1, f)
    if trivial_action:
        return 3, 0, 0
    if action is None:
        raise ValueError("supply the involution's 3x3 action")
    M = [[K(x) if not isinstance(x, tuple) else x for x in row] for row in action]
    if mat_mul(K, M, M) != mat_identity(K, 3):
        raise ValueError("action is not an involution")
    h0 = 3 - field_rank(K, mat_sub(K, M, mat_identity(K, 3)), 3)
    # |Z/2| is invertible on a module of odd order, so higher cohomology vanishes
    return h0, 0, 0


# ------------------------------------------------------- finite group tables

class GlobalCocycleTable:
    """A cocycle on a finite group given by a multiplication function.

    ``elements``: list of hashable group elements; ``mul(g, h)``;
    ``action(g)``: module matrix; ``values``: dict g -> module vector;
    ``places``: label -> (frobenius, inertia or None).
    """

    def __init__(self, K, elements, mul, action, values, places):
        self.K = K
        self.elements = list(elements)
        self.mul = mul
        self.action = action
        self.values = dict(values)
        self.places = dict(places)
        self._check()

    def _check(self):
        K = self.K
        for g in self.elements:
            Ag = self.action(g)
            for h in self.elements:
                lhs = self.values[self.mul(g, h)]
                rhs = [K.add(x, y) for x, y in zip(self.values[g], mat_vec(K, Ag, self.values[h]))]
                if lhs != rhs:
                    raise NotACocycle(f"cocycle identity fails at ({g}, {h})")

    @classmethod
    def from_generators(cls, K, gens, mul, identity, action, gen_values, places):
        """Extend cocycle values on generators to the generated group (exactly checked)."""
        n = len(next(iter(gen_values.values())))
        values = {identity: [K.zero] * n}
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = mul(s, g)
                    val = [K.add(x, y) for x, y in zip(gen_values[s], mat_vec(K, action(s), values[g]))]
                    if h in values:
                        if values[h] != val:
                            raise NotACocycle("generator values do not extend to a cocycle")
                    else:
                        values[h] = val
                        nxt.append(h)
            frontier = nxt
        return cls(K, list(values), mul, action, values, places)


def eval_restriction(table, label):
    if label not in table.places:
        raise MissingFrobenius(label)
    frob, inertia = table.places[label]
    K = table.K
    gens = [g for g in (frob, inertia) if g is not None]
    n = len(table.values[frob])
    I = mat_identity(K, n)
    rows, rhs = [], []
    for g in gens:
        M = mat_sub(K, table.action(g), I)
        rows.extend(M)
        rhs.extend(table.values[g])
    trivial = field_solve(K, rows, rhs, n) is not None
    return {
        "frobenius_value": table.values[frob],
        "inertia_value": table.values[inertia] if inertia is not None else None,
        "is_trivial_at_decomposition": trivial,
    }
