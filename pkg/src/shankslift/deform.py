"""2x2 matrices over W(F_{p^f})/p^n and the local deformation classes.

Shapes (s = the square root of l or w that is 1 mod 3):

* C_l:   sigma -> [[s, y], [0, 1/s]] with y = 0 mod 3, tau -> [[1, 1], [0, 1]]
* nice:  sigma -> diag(v, 1), tau -> [[1, p y], [0, 1]]
* c3:    sigma -> [[s, 1 + 3x], [0, 1/s]], tau -> [[1, 3y], [0, 1]]

Membership is tested after conjugation by upper-triangular matrices that are
the identity mod p.  Such conjugation keeps both images upper triangular with
the same diagonal and only rescales or translates the corners, so the
normalisation can be done in closed form; ``orbit_normal_form`` is the
brute-force search used to cross-check it.
"""

import itertools
import logging
from dataclasses import dataclass

from .rings import NotAUnit, WittRing

log = logging.getLogger(__name__)


class EvenPrime(ValueError):
    pass


class WrongShape(ValueError):
    pass


class NotMultiplicative(ValueError):
    def __init__(self, relation, value):
        super().__init__(f"twisted map violates relation {relation}")
        self.relation = relation
        self.value = value


class MatrixModPn:
    """[[a, b], [c, d]] over R = WittRing(p, n, f)."""

    __slots__ = ("R", "a", "b", "c", "d")

    def __init__(self, R, entries):
        self.R = R
        a, b, c, d = (R(x) if not isinstance(x, tuple) else R(x) for x in entries)
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def of(cls, p, n, rows, f=1):
        R = WittRing(p, n, f)
        return cls(R, (rows[0][0], rows[0][1], rows[1][0], rows[1][1]))

    @classmethod
    def identity(cls, R):
        return cls(R, (1, 0, 0, 1))

    @property
    def p(self):
        return self.R.p

    @property
    def n(self):
        return self.R.N

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def int_rows(self):
        """Integer entries (first Witt coordinate), for f = 1 display."""
        return [[x[0] if self.R.f == 1 else x for x in row] for row in self.rows()]

    def __mul__(self, o):
        R = self.R
        m, ad = R.mul, R.add
        return MatrixModPn(R, (
            ad(m(self.a, o.a), m(self.b, o.c)),
            ad(m(self.a, o.b), m(self.b, o.d)),
            ad(m(self.c, o.a), m(self.d, o.c)),
            ad(m(self.c, o.b), m(self.d, o.d)),
        ))

    def __eq__(self, o):
        return isinstance(o, MatrixModPn) and self.R == o.R and self.entries() == o.entries()

    def __hash__(self):
        return hash((self.R, self.entries()))

    def __repr__(self):
        return f"MatrixModPn(p={self.p}, n={self.n}, {self.int_rows()})"

    def det(self):
        R = self.R
        return R.sub(R.mul(self.a, self.d), R.mul(self.b, self.c))

    @property
    def is_sl2(self):
        return self.det() == self.R.one

    def inverse(self):
        R = self.R
        di = R.inv(self.det())
        return MatrixModPn(R, (R.mul(self.d, di), R.neg(R.mul(self.b, di)), R.neg(R.mul(self.c, di)), R.mul(self.a, di)))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = MatrixModPn.identity(self.R)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self, g):
        return g * self * g.inverse()

    def reduce(self, k):
        return MatrixModPn(WittRing(self.p, k, self.R.f), tuple(self.R.reduce(x, k) for x in self.entries()))


@dataclass
class LocalDeformation:
    sigma: MatrixModPn
    tau: MatrixModPn
    v: int
    kind: str = ""

    def __post_init__(self):
        if self.sigma.R != self.tau.R:
            raise ValueError("sigma and tau live over different rings")
        if self.sigma * self.tau * self.sigma.inverse() != self.tau ** self.v:
            raise ValueError("tame relation sigma tau sigma^-1 = tau^v fails")

    def conj(self, g):
        return LocalDeformation(self.sigma.conj(g), self.tau.conj(g), self.v, self.kind)


# ------------------------------------------------------------- square roots

def hensel_sqrt(u, p, n):
    """Square root of a unit u in Z/p^n: the branch = 1 mod p when u = 1 mod p.

    For other residues the root whose residue lies in [1, (p-1)/2] is returned.
    None when u is not a square mod p.
    """
    if p == 2:
        raise EvenPrime("p must be odd")
    mod = p**n
    u %= mod
    if u % p == 0:
        raise NotAUnit(f"{u} is not a unit mod {p}")
    r0 = next((x for x in range(1, (p + 1) // 2) if (x * x - u) % p == 0), None)
    if r0 is None:
        return None
    if u % p == 1:
        r0 = 1
    x, prec = r0, p
    while prec < mod:
        prec = min(prec * prec, mod)
        x = (x - (x * x - u) * pow(2 * x, -1, prec)) % prec
    return x % mod


def _sqrt_in(R, v):
    s = hensel_sqrt(v, R.p, R.N)
    if s is None:
        raise WrongShape(f"{v} has no square root mod {R.p}")
    return R(s)


def _upper_parts(sig, tau):
    R = sig.R
    if not R.is_zero(sig.c):
        raise WrongShape("sigma is not upper triangular (lower-left entry nonzero)")
    if not R.is_zero(tau.c):
        raise WrongShape("tau is not upper triangular (lower-left entry nonzero)")
    if tau.a != R.one or tau.d != R.one:
        raise WrongShape("tau is not unipotent")


def _corner_mod_p(R, x):
    return x[0] % R.p, tuple(c % R.p for c in x)


# ------------------------------------------------------------ class checks

def check_C_ell(d, ell):
    sig, tau = d.sigma, d.tau
    R = sig.R
    if R.p != 3:
        raise WrongShape("C_l is defined for p = 3")
    if ell % 3 != 1:
        raise WrongShape("l must be 1 mod 3")
    _upper_parts(sig, tau)
    s = _sqrt_in(R, ell)
    if sig.a != s:
        raise WrongShape(f"sigma top-left entry {sig.a} != sqrt(l) = {s}")
    if sig.d != R.inv(s):
        raise WrongShape("sigma bottom-right entry != 1/sqrt(l)")
    if not R.is_unit(tau.b):
        raise WrongShape("tau corner is not a unit")
    lam = R.inv(tau.b)  # conjugation by diag(lam, 1) moves the tau corner to 1
    if tau.b[0] % 3 != 1 or any(c % 3 for c in tau.b[1:]):
        raise WrongShape("tau corner is not 1 mod 3")
    y = R.mul(lam, sig.b)
    if any(c % 3 for c in y):
        raise WrongShape("sigma corner y is not divisible by 3")
    return {"y": y, "normaliser": ("diag", lam)}


def check_nice(d, v, p):
    sig, tau = d.sigma, d.tau
    R = sig.R
    if R.p != p:
        raise WrongShape("coefficient ring has the wrong characteristic")
    if (v - 1) % p == 0 or (v + 1) % p == 0:
        raise WrongShape("v = +-1 mod p is not nice")
    _upper_parts(sig, tau)
    if sig.a != R(v) or sig.d != R.one:
        raise WrongShape("sigma diagonal is not (v, 1)")
    # unipotent conjugation kills the sigma corner when it is 0 mod p
    if any(c % p for c in sig.b):
        raise WrongShape("sigma corner is not 0 mod p")
    if any(c % p for c in tau.b):
        raise WrongShape("tau corner is not divisible by p")
    beta = R.mul(R.neg(sig.b), R.inv(R.sub(R.one, R(v))))
    return {"y_times_p": tau.b, "normaliser": ("unipotent", beta)}


def check_c3(d, w):
    sig, tau = d.sigma, d.tau
    R = sig.R
    if R.p != 3:
        raise WrongShape("c3 is defined for p = 3")
    if w % 3 != 1:
        raise WrongShape("w must be 1 mod 3")
    _upper_parts(sig, tau)
    s = _sqrt_in(R, w)
    if sig.a != s or sig.d != R.inv(s):
        raise WrongShape("sigma diagonal is not (sqrt(w), 1/sqrt(w))")
    if sig.b[0] % 3 != 1 or any(c % 3 for c in sig.b[1:]):
        raise WrongShape("sigma corner is not of the form 1 + 3x")
    if any(c % 3 for c in tau.b):
        raise WrongShape("tau corner is not of the form 3y")
    return {"x_plus": sig.b, "normaliser": ("none", None)}


def _as_bool(fn, *args):
    try:
        fn(*args)
        return True
    except WrongShape as exc:
        log.debug("shape rejected: %s", exc)
        return False


def in_class_C_ell(d, ell, n=None):
    if n is not None and d.sigma.n != n:
        raise ValueError("level mismatch")
    return _as_bool(check_C_ell, d, ell)


def in_class_nice(d, v, p, n=None):
    if n is not None and d.sigma.n != n:
        raise ValueError("level mismatch")
    return _as_bool(check_nice, d, v, p)


def in_class_c3(d, w, n=None):
    if n is not None and d.sigma.n != n:
        raise ValueError("level mismatch")
    return _as_bool(check_c3, d, w)


# ------------------------------------------------------- normal form shapes

def residual_ell(n=1):
    R = WittRing(3, n)
    I = MatrixModPn.identity(R)
    return I, MatrixModPn(R, (1, 1, 0, 1))


def shape_C_ell(ell, n, y=0):
    R = WittRing(3, n)
    s = _sqrt_in(R, ell)
    sig = MatrixModPn(R, (s, R(3 * y), R.zero, R.inv(s)))
    return LocalDeformation(sig, MatrixModPn(R, (1, 1, 0, 1)), ell, "ell")


def shape_nice(v, p, n, y=0, f=1):
    R = WittRing(p, n, f)
    return LocalDeformation(MatrixModPn(R, (v, 0, 0, 1)), MatrixModPn(R, (1, p * y, 0, 1)), v, "nice")


def shape_c3(w, n, x=0, y=0, f=1):
    R = WittRing(3, n, f)
    s = _sqrt_in(R, w)
    xx = R(x) if not isinstance(x, tuple) else R(x)
    yy = R(y) if not isinstance(y, tuple) else R(y)
    corner = R.add(R.one, R.scale(xx, 3))
    sig = MatrixModPn(R, (s, corner, R.zero, R.inv(s)))
    tau = MatrixModPn(R, (R.one, R.scale(yy, 3), R.zero, R.one))
    return LocalDeformation(sig, tau, w, "c3")


def normalisation_group(p, n, kind="upper", f=1):
    """Upper-triangular (or diagonal) matrices = I mod p at level n."""
    R = WittRing(p, n, f)
    units = [x for x in R.elements() if all(c % p == 0 for c in R.sub(x, R.one))]
    tops = [x for x in R.elements() if all(c % p == 0 for c in x)]
    out = []
    for a in units:
        for d in units:
            if kind == "diagonal":
                out.append(MatrixModPn(R, (a, R.zero, R.zero, d)))
            else:
                for b in tops:
                    out.append(MatrixModPn(R, (a, b, R.zero, d)))
    return out


def orbit_normal_form(d, predicate, kind="upper"):
    """Search the normalisation group for a conjugate satisfying ``predicate`` (test oracle)."""
    for g in normalisation_group(d.sigma.p, d.sigma.n, kind, d.sigma.R.f):
        c = d.conj(g)
        if predicate(c):
            return g
    return None


def is_exact_C_ell(d, ell):
    R = d.sigma.R
    s = _sqrt_in(R, ell)
    return (d.tau == MatrixModPn(R, (1, 1, 0, 1)) and d.sigma.a == s and d.sigma.d == R.inv(s)
            and R.is_zero(d.sigma.c) and all(c % 3 == 0 for c in d.sigma.b))


def is_exact_nice(d, v, p):
    R = d.sigma.R
    return (d.sigma == MatrixModPn(R, (v, 0, 0, 1)) and R.is_zero(d.tau.c) and d.tau.a == R.one
            and d.tau.d == R.one and all(c % p == 0 for c in d.tau.b))


# ------------------------------------------------------------------ twisting

def ad0_matrix(R, vec):
    """Trace-zero matrix x e + y h + z f with integer lifts of the coordinates."""
    x, y, z = (R(c) if not isinstance(c, tuple) else R(c) for c in vec)
    return MatrixModPn(R, (y, x, z, R.neg(y)))


def _word_value(rep, word):
    R = next(iter(rep.values())).R
    M = MatrixModPn.identity(R)
    for g, e in word:
        M = M * (rep[g] ** e)
    return M


def fox_value(rep, h, word):
    """c(word) for the cocycle with c(g) = h(g), acting through the residual representation.

    Returned as a 2x2 trace-zero MatrixModPn at level 1.
    """
    R1 = WittRing(rep[next(iter(rep))].p, 1, rep[next(iter(rep))].R.f)
    res = {g: m.reduce(1) for g, m in rep.items()}
    H = {g: ad0_matrix(R1, vec) for g, vec in h.items()}
    acc = MatrixModPn(R1, (0, 0, 0, 0))
    prefix = MatrixModPn.identity(R1)

    def add(A, B):
        return MatrixModPn(R1, tuple(R1.add(x, y) for x, y in zip(A.entries(), B.entries())))

    def neg(A):
        return MatrixModPn(R1, tuple(R1.neg(x) for x in A.entries()))

    periods = {}
    for g, M in res.items():
        k, P = 1, M
        while P != MatrixModPn.identity(R1):
            P, k = P * M, k + 1
        # the cocycle over p * ord(g) steps is p times a sum, hence zero mod p
        periods[g] = R1.p * k
    for g, e in word:
        step = res[g] if e > 0 else res[g].inverse()
        reps = abs(e) % periods[g]
        for _ in range(reps):
            if e > 0:
                term = H[g]
            else:
                # c(g^-1) = -g^-1 c(g)
                term = neg(H[g].conj(res[g].inverse()))
            acc = add(acc, term.conj(prefix))
            prefix = prefix * step
    return acc


def twist_by_cocycle(rep, h, relations=(), check=True):
    """g -> (I + p^(n-1) H(g)) rep(g) at the common level n of ``rep``."""
    first = next(iter(rep.values()))
    R = first.R
    p, n = R.p, R.N
    eps = p ** (n - 1)
    out = {}
    for g, M in rep.items():
        vec = h.get(g, (0, 0, 0))
        H = ad0_matrix(R, vec)
        E = MatrixModPn(R, tuple(R.add(x, R.scale(y, eps)) for x, y in zip(MatrixModPn.identity(R).entries(), H.entries())))
        out[g] = E * M
    if check:
        for rel in relations:
            val = _word_value(out, rel)
            if val != MatrixModPn.identity(R):
                raise NotMultiplicative(rel, val)
    return out


def relation_cocycle_defect(rep, h, relations):
    """Relations on which h fails the linearised cocycle condition."""
    zero = None
    bad = []
    for rel in relations:
        v = fox_value(rep, h, rel)
        if zero is None:
            zero = MatrixModPn(v.R, (0, 0, 0, 0))
        if v != zero:
            bad.append(rel)
    return bad


def tame_relations(v):
    """sigma tau sigma^-1 tau^-v as a word."""
    return [[("sigma", 1), ("tau", 1), ("sigma", -1), ("tau", -v)]]


# ------------------------------------------------------ Frobenius at level T

def _trunc(poly, p, N, d):
    m = p**N
    out = [0] * (d + 1)
    for i, c in enumerate(poly[: d + 1]):
        out[i] = c % m
    return out


def frobenius_target(w, d, kind, p, N):
    m = p**N
    one_plus = [1] + [0] * d
    one_plus[d] = 1
    one_minus = [1] + [0] * d
    one_minus[d] = -1 % m  # (1 + T^d)^-1 = 1 - T^d mod T^(d+1)
    if kind == "nice":
        a = [w * c % m for c in one_plus]
        return [[a, [0] * (d + 1)], [[0] * (d + 1), one_minus]]
    if kind == "c3":
        s = hensel_sqrt(w, 3, N)
        if s is None:
            raise WrongShape("w is not a square mod 3")
        si = pow(s, -1, m)
        return [[[s * c % m for c in one_plus], [1] + [0] * d], [[0] * (d + 1), [si * c % m for c in one_minus]]]
    raise ValueError(f"unknown kind {kind}")


def frobenius_shape_Cd(frob, w, d, kind, p=None, N=1):
    """Entry-wise comparison with the C_d target mod (p^N, T^(d+1))."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if p is None:
        p = 3 if kind == "c3" else None
    if p is None:
        raise ValueError("p is required for the nice shape")
    target = frobenius_target(w, d, kind, p, N)
    for i, j in itertools.product(range(2), range(2)):
        if _trunc(frob[i][j], p, N, d) != target[i][j]:
            return False
    return True
