"""Exact linear algebra: Smith normal form over Z, modular solving, generic Gaussian elimination.

All matrices are lists of lists (rows).  Nothing here is asymptotically clever;
every consumer in this package works at desk scale (dimensions well under 100).
"""

from __future__ import annotations

from fractions import Fraction


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, r = len(A), len(B[0]), len(B)
    return [[sum(A[i][k] * B[k][j] for k in range(r)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A))]


def transpose(A):
    return [list(col) for col in zip(*A)]


def smith_normal_form(A):
    """Return (D, U, V) with U*A*V = D diagonal, U and V unimodular over Z.

    D has nonnegative diagonal entries d_1 | d_2 | ... (trailing zeros allowed).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [row[:] for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def pivot_search(s):
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < best[0]):
                    best = (abs(D[i][j]), i, j)
        return best

    s = 0
    while True:
        found = pivot_search(s)
        if found is None:
            break
        _, pi, pj = found
        if pi != s:
            D[s], D[pi] = D[pi], D[s]
            U[s], U[pi] = U[pi], U[s]
        if pj != s:
            for row in D:
                row[s], row[pj] = row[pj], row[s]
            for row in V:
                row[s], row[pj] = row[pj], row[s]
        # clear row and column s; restart if a reduction produced a smaller pivot
        dirty = False
        for i in range(s + 1, m):
            if D[i][s] != 0:
                q = D[i][s] // D[s][s]
                for j in range(n):
                    D[i][j] -= q * D[s][j]
                for j in range(m):
                    U[i][j] -= q * U[s][j]
                if D[i][s] != 0:
                    dirty = True
        for j in range(s + 1, n):
            if D[s][j] != 0:
                q = D[s][j] // D[s][s]
                for i in range(m):
                    D[i][j] -= q * D[i][s]
                for i in range(n):
                    V[i][j] -= q * V[i][s]
                if D[s][j] != 0:
                    dirty = True
        if dirty:
            continue
        if D[s][s] < 0:
            for j in range(n):
                D[s][j] = -D[s][j]
            for j in range(m):
                U[s][j] = -U[s][j]
        s += 1
        if s >= min(m, n):
            break
    # enforce divisibility d_s | d_{s+1}
    r = 0
    while r < min(m, n) and D[r][r] != 0:
        r += 1
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if b % a != 0:
                # standard 2x2 fix-up: add column i+1 to column i, re-reduce
                for row in D:
                    row[i] += row[i + 1]
                for row in V:
                    row[i] += row[i + 1]
                import math

                g = math.gcd(a, b)
                # one round of elimination on the 2x2 block
                # [a b; 0 b] -> [g 0; * *] via Bezout row ops
                x, y = _bezout(a, b)
                Ui = [row[:] for row in identity_matrix(2)]
                # rows i, i+1: new_row_i = x*row_i + y*row_{i+1}
                ri = [x * D[i][j] + y * D[i + 1][j] for j in range(n)]
                rii = [(-(b // g)) * D[i][j] + (a // g) * D[i + 1][j] for j in range(n)]
                D[i], D[i + 1] = ri, rii
                ui = [x * U[i][j] + y * U[i + 1][j] for j in range(m)]
                uii = [(-(b // g)) * U[i][j] + (a // g) * U[i + 1][j] for j in range(m)]
                U[i], U[i + 1] = ui, uii
                # clear the off-diagonal entries created in the 2x2 block
                q = D[i][i + 1] // D[i][i]
                for rr in range(len(D)):
                    D[rr][i + 1] -= q * D[rr][i]
                for rr in range(n):
                    V[rr][i + 1] -= q * V[rr][i]
                if D[i + 1][i] != 0:
                    q = D[i + 1][i] // D[i][i]
                    for j in range(n):
                        D[i + 1][j] -= q * D[i][j]
                    for j in range(m):
                        U[i + 1][j] -= q * U[i][j]
                if D[i + 1][i + 1] < 0:
                    for j in range(n):
                        D[i + 1][j] = -D[i + 1][j]
                    for j in range(m):
                        U[i + 1][j] = -U[i + 1][j]
                changed = True
    return D, U, V


def _bezout(a, b):
    """x, y with x*a + y*b = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def elementary_divisors(A):
    D, _, _ = smith_normal_form(A)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i] != 0:
            out.append(D[i][i])
    return out


def int_kernel_basis(A):
    """Basis of the integer kernel {x : A x = 0} as a list of vectors.

    The returned basis spans a saturated sublattice (it is the full kernel).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [list(row) for row in identity_matrix(n)]
    D, _, V = smith_normal_form(A)
    rank = 0
    for i in range(min(m, n)):
        if D[i][i] != 0:
            rank += 1
    basis = []
    for j in range(rank, n):
        basis.append([V[i][j] for i in range(n)])
    return basis


def solve_mod(A, b, N):
    """One solution x of A x = b (mod N), or None.  A integer matrix, N >= 1."""
    m = len(A)
    n = len(A[0]) if m else 0
    D, U, V = smith_normal_form(A)
    c = mat_vec(U, b)
    y = [0] * n
    import math

    for i in range(m):
        d = D[i][i] if i < min(m, n) else 0
        ci = c[i] % N
        if d == 0:
            if ci % N != 0:
                return None
            continue
        g = math.gcd(d, N)
        if ci % g != 0:
            return None
        # solve d*y = ci mod N
        dd, cc, NN = d // g, ci // g, N // g
        y[i] = (cc * pow(dd, -1, NN)) % NN if NN > 1 else 0
    x = mat_vec(V, y)
    return [xi % N for xi in x]


# ---------------------------------------------------------------------------
# integer matrices modulo a prime power p^k
# ---------------------------------------------------------------------------


def _val_p(x, p, k):
    x %= p**k
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def snf_mod_pk(A, p, k):
    """Local Smith normal form over Z/p^k with transforms.

    Returns (vals, U, V): U*A*V = diag(p^v) mod p^k where vals lists the pivot
    valuations (k denotes a zero divisor / free kernel direction), and U, V are
    invertible mod p^k.
    """
    pk = p**k
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[x % pk for x in row] for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)
    s = 0
    vals = []
    while s < min(m, n):
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if D[i][j] % pk:
                    v = _val_p(D[i][j], p, k)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        if bi != s:
            D[s], D[bi] = D[bi], D[s]
            U[s], U[bi] = U[bi], U[s]
        if bj != s:
            for row in D:
                row[s], row[bj] = row[bj], row[s]
            for row in V:
                row[s], row[bj] = row[bj], row[s]
        unit = D[s][s] // (p**v)
        uinv = pow(unit, -1, pk)
        D[s] = [(x * uinv) % pk for x in D[s]]
        U[s] = [(x * uinv) % pk for x in U[s]]
        for i in range(s + 1, m):
            x = D[i][s]
            if x % pk:
                f = x // (p**v)
                for j in range(n):
                    D[i][j] = (D[i][j] - f * D[s][j]) % pk
                for j in range(m):
                    U[i][j] = (U[i][j] - f * U[s][j]) % pk
        for j in range(s + 1, n):
            x = D[s][j]
            if x % pk:
                f = x // (p**v)
                for i in range(m):
                    D[i][j] = (D[i][j] - f * D[i][s]) % pk
                for i in range(n):
                    V[i][j] = (V[i][j] - f * V[i][s]) % pk
        vals.append(v)
        s += 1
    while len(vals) < min(m, n):
        vals.append(k)
    return vals, U, V


def inv_mod_pk(M, p, k):
    """Inverse of a matrix invertible mod p^k."""
    pk = p**k
    n = len(M)
    aug = [[M[i][j] % pk for j in range(n)] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col] % p:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix not invertible mod p^k")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, pk)
        aug[col] = [(x * inv) % pk for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % pk for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# generic Gaussian elimination (any exact field: Fraction, CycNum, F_ell ints)
# ---------------------------------------------------------------------------


def _default_inv(x):
    if isinstance(x, Fraction) or isinstance(x, int):
        return Fraction(1) / Fraction(x)
    return x.inv()


def gauss_rank(rows, inv=_default_inv):
    """Rank of a matrix over an exact field.  Entries must support +,-,*, bool."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < n:
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pinv = inv(rows[rank][col])
        prow = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] * pinv
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
        col += 1
    return rank


def gauss_solve(A, b, inv=_default_inv):
    """One solution of A x = b over an exact field, or None if inconsistent.

    Free variables are set to zero.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    pivots = []
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pinv = inv(aug[rank][col])
        aug[rank] = [pinv * a for a in aug[rank]]
        for i in range(m):
            if i != rank and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * c for a, c in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, m):
        if aug[i][n]:
            return None
    zero = None
    for row in aug:
        for x in row:
            zero = x - x
            break
        break
    x = [zero] * n if zero is not None else [0] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return x


def gauss_nullspace(A, zero, one, inv=_default_inv):
    """Basis of the right nullspace of A over an exact field (list of vectors).

    `zero` and `one` are the additive and multiplicative identities of the
    coefficient field (they cannot always be synthesized from A's entries).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [list(r) for r in A]
    pivots = {}
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pinv = inv(rows[rank][col])
        rows[rank] = [pinv * a for a in rows[rank]]
        for i in range(m):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * c for a, c in zip(rows[i], rows[rank])]
        pivots[col] = rank
        rank += 1
    basis = []
    free_cols = [c for c in range(n) if c not in pivots]
    for fc in free_cols:
        vec = [zero] * n
        vec[fc] = one
        for col, prow in pivots.items():
            vec[col] = zero - rows[prow][fc]
        basis.append(vec)
    return basis
