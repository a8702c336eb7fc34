"""Exact linear algebra: integer HNF/SNF and matrices over prime fields.

Two flavours of finite-field routines live here.  The ``*_mod_p`` functions work
on plain integers modulo a prime and are used for the big class-group matrices;
the ``field_*`` functions take a :class:`~shankslift.rings.WittRing` with
``N == 1`` so that F_{p^f} coefficients are supported.
"""


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# ---------------------------------------------------------------- mod p, ints

def rref_mod_p(rows, p, ncols=None):
    """Row echelon form mod p.  Returns (reduced rows, pivot columns)."""
    mat = [[x % p for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        prow = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                k = mat[i][c]
                mat[i] = [(x - k * y) % p for x, y in zip(mat[i], prow)]
        pivots.append(c)
        rank += 1
    return mat[:rank], pivots


def rank_mod_p(rows, p, ncols=None):
    return len(rref_mod_p(rows, p, ncols)[1])


def nullspace_mod_p(rows, p, ncols):
    """Basis of {x : rows * x = 0} (right kernel) mod p."""
    red, pivots = rref_mod_p(rows, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc] % p
        basis.append(v)
    return basis


def left_kernel_mod_p(rows, p):
    """Basis of {c : sum_i c_i rows[i] = 0} mod p."""
    if not rows:
        return []
    ncols = len(rows[0])
    transposed = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return nullspace_mod_p(transposed, p, len(rows))


def independent_rows_mod_p(rows, p):
    """Indices of a maximal independent subset of rows (greedy, in order)."""
    basis = {}  # pivot column -> reduced row
    chosen = []
    for idx, r in enumerate(rows):
        v = [x % p for x in r]
        for c, b in basis.items():
            if v[c]:
                k = v[c]
                v = [(x - k * y) % p for x, y in zip(v, b)]
        lead = next((c for c, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], -1, p)
        v = [x * inv % p for x in v]
        for c in list(basis):
            b = basis[c]
            if b[lead]:
                k = b[lead]
                basis[c] = [(x - k * y) % p for x, y in zip(b, v)]
        basis[lead] = v
        chosen.append(idx)
    return chosen


def solve_mod_p(rows, rhs, p):
    """One solution x of rows * x = rhs mod p, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref_mod_p(aug, p, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r[ncols]
    return x


def matmul_mod_p(a, b, p):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


# ------------------------------------------------------------------ integers

def bareiss_det(mat):
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def hnf_mod_d(rows, ncols, D):
    """Row-style HNF of a full-rank lattice L in Z^ncols containing D*Z^ncols.

    Returns an upper-triangular ncols x ncols basis with positive diagonal and
    off-diagonal entries reduced modulo the diagonal below them.
    """
    if D <= 0:
        raise ValueError("D must be positive")
    work = [[x % D for x in r] for r in rows]
    work = [r for r in work if any(r)]
    H = []
    for j in range(ncols):
        piv = [0] * ncols
        piv[j] = D
        rest = []
        for r in work:
            if r[j] == 0:
                rest.append(r)
                continue
            g, s, t = xgcd(piv[j], r[j])
            a, b = piv[j] // g, r[j] // g
            new_piv = [(s * x + t * y) for x, y in zip(piv, r)]
            other = [(b * x - a * y) for x, y in zip(piv, r)]
            for k in range(j + 1, ncols):
                new_piv[k] %= D
                other[k] %= D
            piv = new_piv
            other[j] = 0
            if any(other):
                rest.append(other)
        H.append(piv)
        work = rest
    # reduce above the diagonal; columns left to right so that later
    # subtractions never disturb an already reduced entry
    for j in range(ncols):
        d = H[j][j]
        for i in range(j):
            q = H[i][j] // d
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[j])]
    return H


def lattice_hnf(rows, ncols, modulus_hint=None, prime=(1 << 61) - 1):
    """HNF of the lattice spanned by integer rows, or None if not full rank.

    A multiple of the index is obtained from an independent square subset via
    Bareiss, unless ``modulus_hint`` (a known multiple of the group order) is
    supplied.
    """
    if ncols == 0:
        return []
    D = modulus_hint
    if D is None:
        idx = independent_rows_mod_p(rows, prime)
        if len(idx) < ncols:
            return None
        D = abs(bareiss_det([rows[i] for i in idx]))
        if D == 0:
            return None
    return hnf_mod_d(rows, ncols, D)


def smith_form(A, ncols=None):
    """Smith normal form with column transforms.

    Returns (diag, V, Vinv) where U*A*V = diag(d_0, d_1, ...) for some
    unimodular U, V is ncols x ncols unimodular and Vinv its inverse.  The
    diagonal list has length ncols (zeros for free factors), sorted so that
    d_i | d_{i+1} among nonzero entries.
    """
    a = [list(r) for r in A]
    m = ncols if ncols is not None else (len(a[0]) if a else 0)
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    Vi = [[int(i == j) for j in range(m)] for i in range(m)]
    nr = len(a)

    def col_addmul(dst, src, q):
        # column dst += q * column src
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        # inverse: row src -= q * row dst
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_neg(i):
        for row in a:
            row[i] = -row[i]
        for row in V:
            row[i] = -row[i]
        Vi[i] = [-x for x in Vi[i]]

    t = 0
    while t < min(nr, m):
        best = None
        for i in range(t, nr):
            for j in range(t, m):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            col_swap(t, j)
        while True:
            done = True
            piv = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, m):
                if a[t][j]:
                    q = a[t][j] // piv
                    col_addmul(j, t, -q)
                    if a[t][j]:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, m):
                        if a[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                continue
            # move the smallest nonzero entry of row/col t to the pivot
            best = (t, t)
            for i in range(t, nr):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, m):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                col_swap(t, j)
        if a[t][t] < 0:
            col_neg(t)
        t += 1
    diag = [a[i][i] if i < nr else 0 for i in range(m)]
    return diag, V, Vi


# ------------------------------------------------------- generic field (F_q)

def field_rref(K, rows, ncols):
    mat = [list(r) for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if not K.is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = K.inv(mat[rank][c])
        mat[rank] = [K.mul(x, inv) for x in mat[rank]]
        prow = mat[rank]
        for i in range(len(mat)):
            if i != rank and not K.is_zero(mat[i][c]):
                k = mat[i][c]
                mat[i] = [K.sub(x, K.mul(k, y)) for x, y in zip(mat[i], prow)]
        pivots.append(c)
        rank += 1
    return mat[:rank], pivots


def field_rank(K, rows, ncols):
    return len(field_rref(K, rows, ncols)[1])


def field_nullspace(K, rows, ncols):
    red, pivots = field_rref(K, rows, ncols)
    basis = []
    for fc in range(ncols):
        if fc in pivots:
            continue
        v = [K.zero] * ncols
        v[fc] = K.one
        for r, pc in zip(red, pivots):
            v[pc] = K.neg(r[fc])
        basis.append(v)
    return basis


def field_solve(K, rows, rhs, ncols):
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = field_rref(K, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [K.zero] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r[ncols]
    return x


def mat_mul(K, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = K.zero
            for t in range(k):
                acc = K.add(acc, K.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_vec(K, A, v):
    out = []
    for row in A:
        acc = K.zero
        for x, y in zip(row, v):
            acc = K.add(acc, K.mul(x, y))
        out.append(acc)
    return out


def mat_identity(K, n):
    return [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]


def mat_sub(K, A, B):
    return [[K.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(K, A, c):
    return [[K.mul(c, x) for x in row] for row in A]


def mat_transpose(A):
    return [list(r) for r in zip(*A)]


def mat_pow(K, A, e):
    result = mat_identity(K, len(A))
    base = A
    while e:
        if e & 1:
            result = mat_mul(K, result, base)
        base = mat_mul(K, base, base)
        e >>= 1
    return result


def mat_inverse(K, A):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, mat_identity(K, n))]
    red, pivots = field_rref(K, aug, n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def mat_equal(A, B):
    return all(list(ra) == list(rb) for ra, rb in zip(A, B)) and len(A) == len(B)
