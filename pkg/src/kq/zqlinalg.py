"""Linear algebra over the local ring Z_q mod p^k and over F_p / F_q."""

from __future__ import annotations

from .errors import InconsistentInvariants, PrecisionExhausted
from .padic import ZqContext, ZqElem

# ---------------------------------------------------------------------------
# F_p linear algebra (plain ints mod p)
# ---------------------------------------------------------------------------


def modp_echelon(rows, p):
    """Reduced row echelon form mod p.  Returns (echelon_rows, pivot_columns)."""
    rows = [[x % p for x in r] for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def modp_rank(rows, p):
    return len(modp_echelon(rows, p)[0])


def modp_nullspace(rows, p):
    """Basis of {x : rows * x = 0} over F_p."""
    ncols = len(rows[0]) if rows else 0
    ech, pivots = modp_echelon(rows, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, col in zip(ech, pivots):
            vec[col] = (-r[free]) % p
        basis.append(vec)
    return basis


def modp_solve(A, b, p):
    """One solution of A x = b mod p, or None."""
    m = len(A)
    aug = [[x % p for x in A[i]] + [b[i] % p] for i in range(m)]
    ech, pivots = modp_echelon(aug, p)
    n = len(A[0]) if m else 0
    x = [0] * n
    for r, col in zip(ech, pivots):
        if col == n:
            return None
        x[col] = r[n]
    return x


def modp_in_span(echelon_rows, pivots, v, p):
    """Reduce v by a reduced echelon basis; return residual vector."""
    v = [x % p for x in v]
    for r, col in zip(echelon_rows, pivots):
        if v[col]:
            f = v[col]
            v = [(a - f * b) % p for a, b in zip(v, r)]
    return v


# ---------------------------------------------------------------------------
# Z_q mod p^k linear algebra (entries ZqElem, local-ring pivoting)
# ---------------------------------------------------------------------------


def zq_zero_vector(ctx: ZqContext, n):
    return [ctx.zero] * n


def zq_column_reduce(vectors, ctx: ZqContext):
    """Echelonize a generating set of a free direct summand of (Z_q/p^k)^n.

    Returns (basis, pivots): basis vectors normalized to 1 at their pivot
    coordinate and 0 at other pivots.  Raises InconsistentInvariants if a
    nonzero residual without unit coordinate remains (the span would not be a
    direct summand, which callers' idempotent images always are).
    """
    basis = []
    pivots = []
    for v in vectors:
        v = list(v)
        for bvec, piv in zip(basis, pivots):
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, bvec)]
        piv = None
        for i, x in enumerate(v):
            if x.is_unit():
                piv = i
                break
        if piv is None:
            if any(v):
                raise InconsistentInvariants("span is not a free direct summand")
            continue
        inv = v[piv].inv()
        v = [inv * x for x in v]
        # clear the new pivot coordinate from existing basis vectors
        for idx, (bvec, bp) in enumerate(zip(basis, pivots)):
            c = bvec[piv]
            if c:
                basis[idx] = [a - c * b for a, b in zip(bvec, v)]
        basis.append(v)
        pivots.append(piv)
    return basis, pivots


def zq_coordinates(basis, pivots, v):
    """Coefficients of v in an echelonized basis; raises if v is outside the span."""
    v = list(v)
    coeffs = []
    for bvec, piv in zip(basis, pivots):
        c = v[piv]
        coeffs.append(c)
        if c:
            v = [a - c * b for a, b in zip(v, bvec)]
    if any(v):
        raise InconsistentInvariants("vector outside span during coordinate extraction")
    return coeffs


def zq_det_is_unit(M, ctx: ZqContext) -> bool:
    """True iff a square Zq-matrix is invertible mod p^k (unit determinant)."""
    n = len(M)
    res = ctx.residue
    rows = [[x.reduce_mod_p() for x in row] for row in M]
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, n):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            return False
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [inv * x for x in rows[rank]]
        for i in range(n):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank == n


def _shift_down(x: ZqElem, a: int) -> ZqElem:
    """x / p^a for val(x) >= a (exact on coordinates; meaningful mod p^(k-a))."""
    pa = x.ctx.p**a
    return ZqElem(x.ctx, tuple(c // pa for c in x.coeffs))


def zq_snf_valuations(M, ctx: ZqContext, certify: bool = True):
    """Smith normal form valuations of a Zq-matrix over Z_q mod p^k.

    Returns a sorted list of pivot valuations (one per nonzero divisor); entries
    that vanish mod p^k contribute nothing.  With certify=True, raises
    PrecisionExhausted when a pivot valuation reaches k/2 (the result would not
    be trustworthy at this precision).
    """
    rows = [list(r) for r in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    vals = []
    s = 0
    while True:
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if rows[i][j]:
                    v = rows[i][j].valuation()
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        if certify and 2 * v >= ctx.k and v < ctx.k:
            raise PrecisionExhausted(f"SNF pivot valuation {v} too close to precision {ctx.k}")
        rows[s], rows[bi] = rows[bi], rows[s]
        for row in rows:
            row[s], row[bj] = row[bj], row[s]
        pivot = rows[s][s]
        unit = _shift_down(pivot, v)
        uinv = unit.inv()
        rows[s] = [uinv * x for x in rows[s]]
        for i in range(s + 1, m):
            x = rows[i][s]
            if x:
                f = _shift_down(x, v)
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[s])]
        for j in range(s + 1, n):
            x = rows[s][j]
            if x:
                f = _shift_down(x, v)
                for i in range(s, m):
                    rows[i][j] = rows[i][j] - f * rows[i][s]
        vals.append(v)
        s += 1
        if s >= min(m, n):
            break
    return sorted(vals)


def zq_spans_equal(vectors_a, vectors_b, ctx: ZqContext) -> bool:
    """Do two generating sets span the same submodule of (Z_q/p^k)^n?

    Works for spans that are direct summands (unit-pivot echelon exists).
    """
    try:
        basis_a, piv_a = zq_column_reduce(vectors_a, ctx)
        basis_b, piv_b = zq_column_reduce(vectors_b, ctx)
    except InconsistentInvariants:
        return _zq_spans_equal_general(vectors_a, vectors_b, ctx)
    if len(basis_a) != len(basis_b):
        return False
    try:
        for v in basis_a:
            zq_coordinates(basis_b, piv_b, v)
        for v in basis_b:
            zq_coordinates(basis_a, piv_a, v)
    except InconsistentInvariants:
        return False
    return True


def _zq_spans_equal_general(va, vb, ctx):
    # general membership by solving over Z/p^k, coordinates restricted to scalars
    from .intlinalg import solve_mod

    def flatten(vs):
        return [[c for x in v for c in x.coeffs] for v in vs]

    fa, fb = flatten(va), flatten(vb)
    # each vector of a must be an integer combination of b's vectors mod p^k
    # (coefficients in Z suffice: Z_q-coefficients expand the generating set)
    def covered(targets, gens_vectors):
        gens = []
        for g in gens_vectors:
            for mult in _zq_scalar_multiples_basis(ctx):
                gens.append([c for x in (mult * y for y in g) for c in x.coeffs])
        A = [list(col) for col in zip(*gens)] if gens else []
        for t in [[c for x in t for c in x.coeffs] for t in targets]:
            if gens:
                if solve_mod(A, t, ctx.pk) is None:
                    return False
            elif any(c % ctx.pk for c in t):
                return False
        return True

    return covered(va, vb) and covered(vb, va)


def _zq_scalar_multiples_basis(ctx):
    # 1, t, ..., t^(f-1): Z-basis of Z_q over Z_p
    out = [ctx.one]
    for _ in range(ctx.f - 1):
        out.append(out[-1] * ctx.gen)
    return out
