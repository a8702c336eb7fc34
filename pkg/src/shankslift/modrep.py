"""F_p[Z/3]-modules: decomposition of an order-3 action into irreducibles.

For p = 2 mod 3 the irreducibles are the trivial line and a 2-dimensional
module U_2 (x^2 + x + 1 is irreducible over F_p); for p = 1 mod 3 the action
is diagonalisable with eigenvalues in the cube roots of unity.

>>> decompose(CyclicActionModule(2, [[0, 1], [1, 1]]))
Decomposition(p=2, n=2, m_trivial=0, m_U2=1, characters=None)
"""

from dataclasses import dataclass

from .linalg import matmul_mod_p, rank_mod_p


class BadOrder(ValueError):
    pass


class WildPrime(ValueError):
    pass


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CyclicActionModule:
    p: int
    T: list

    def __post_init__(self):
        n = len(self.T)
        if n and any(len(r) != n for r in self.T):
            raise ValueError("T must be square")
        T = [[x % self.p for x in r] for r in self.T]
        object.__setattr__(self, "T", T)
        if n:
            T3 = matmul_mod_p(matmul_mod_p(T, T, self.p), T, self.p)
            if T3 != _identity(n):
                raise BadOrder("T^3 is not the identity")

    @property
    def n(self):
        return len(self.T)


@dataclass(frozen=True)
class Decomposition:
    p: int
    n: int
    m_trivial: int
    m_U2: int = None
    characters: tuple = None  # (m_chi0, m_chi1, m_chi2) for p = 1 mod 3


def _kernel_dim(M, p, n):
    return n - (rank_mod_p(M, p, n) if n else 0)


def _shift(T, c, p):
    n = len(T)
    return [[(T[i][j] - (c if i == j else 0)) % p for j in range(n)] for i in range(n)]


def decompose(module):
    p, T, n = module.p, module.T, module.n
    if p == 3:
        raise WildPrime("p = 3 divides the group order")
    m0 = _kernel_dim(_shift(T, 1, p), p, n)
    if p % 3 == 2:
        if (n - m0) % 2:
            raise AssertionError("odd complement to the fixed space")
        return Decomposition(p, n, m0, (n - m0) // 2)
    w = next(x for x in range(2, p) if pow(x, 3, p) == 1)
    m1 = _kernel_dim(_shift(T, w, p), p, n)
    m2 = _kernel_dim(_shift(T, w * w % p, p), p, n)
    if m0 + m1 + m2 != n:
        raise AssertionError("eigenspaces do not fill the module")
    return Decomposition(p, n, m0, None, (m0, m1, m2))


def parity_holds(module):
    if module.p % 3 != 2:
        raise ValueError("parity statement needs p = 2 mod 3")
    d = decompose(module)
    return d.m_trivial == 0 and d.n % 2 == 0


def _compose(a, b):
    return tuple(a[b[i]] for i in range(4))


def _even(perm):
    sign, seen = 1, set()
    for i in range(4):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign == 1


def _order(perm):
    e, k = tuple(range(4)), 1
    x = perm
    while x != e:
        x = _compose(perm, x)
        k += 1
    return k


def a4_order_table():
    """Element orders of A_4 by conjugacy class, with the Klein-complement check."""
    from itertools import permutations

    elems = [q for q in permutations(range(4)) if _even(q)]
    klein = {q for q in elems if _order(q) <= 2}
    if len(elems) != 12 or len(klein) != 4:
        raise AssertionError("A_4 enumeration failed")
    if any(_order(q) != 3 for q in elems if q not in klein):
        raise AssertionError("an element outside the Klein group does not have order 3")
    return {"identity": 1, "double_transposition": 2, "3-cycle (abc)": 3, "3-cycle (acb)": 3}
