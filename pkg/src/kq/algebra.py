"""Finite free algebras over Z_q mod p^k: radicals, idempotent lifting, labels.

The decomposition pipeline is: reduce mod p, restrict scalars to F_p, compute
the Jacobson radical by the characteristic-polynomial-coefficient chain (with
nilpotency and semisimplicity certificates), split idempotents in the
semisimple quotient, then Hensel-lift back to precision p^k with the cubic
Newton step y = 3y^2 - 2y^3.
"""

from __future__ import annotations

import itertools
import math
import random

from .errors import InconsistentInvariants, PrecisionExhausted
from .padic import ZqContext, ZqElem
from .zqlinalg import modp_echelon, modp_in_span, modp_nullspace

_ASSOC_FULL_RANK_BOUND = 14
_ASSOC_SAMPLES = 200


class FinAlgebra:
    """Associative unital algebra, free of finite rank over Z_q mod p^k.

    `table[i][j]` holds the coordinates of basis_i * basis_j.
    """

    def __init__(self, ctx: ZqContext, table, unit, check: bool = True, name: str = "A"):
        self.ctx = ctx
        self.rank = len(table)
        self.table = [[tuple(v) for v in row] for row in table]
        self.unit = tuple(unit)
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        r = self.rank
        basis = [self._basis_vec(i) for i in range(r)]
        for i in range(r):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                raise InconsistentInvariants(f"unit law fails at basis {i} in {self.name}")
        if r <= _ASSOC_FULL_RANK_BOUND:
            triples = itertools.product(range(r), repeat=3)
        else:
            rng = random.Random(0)
            triples = [
                (rng.randrange(r), rng.randrange(r), rng.randrange(r))
                for _ in range(_ASSOC_SAMPLES)
            ]
        for i, j, k in triples:
            left = self.mul(self.table[i][j], basis[k])
            right = self.mul(basis[i], self.table[j][k])
            if left != right:
                raise InconsistentInvariants(f"associativity fails at ({i},{j},{k}) in {self.name}")

    def _basis_vec(self, i):
        return tuple(self.ctx.one if j == i else self.ctx.zero for j in range(self.rank))

    def zero_vec(self):
        return tuple(self.ctx.zero for _ in range(self.rank))

    def mul(self, x, y):
        out = [self.ctx.zero] * self.rank
        for i, xi in enumerate(x):
            if xi:
                row = self.table[i]
                for j, yj in enumerate(y):
                    if yj:
                        c = xi * yj
                        prod = row[j]
                        for m in range(self.rank):
                            if prod[m]:
                                out[m] = out[m] + c * prod[m]
        return tuple(out)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(c * a for a in x)

    def is_idempotent(self, x):
        return self.mul(x, x) == tuple(x)

    # -- reduction mod p as an F_p-algebra (restricted scalars) ---------------

    def fp_algebra(self) -> "FpAlgebra":
        """The algebra A/p as an F_p-algebra of dimension rank * f."""
        ctx = self.ctx
        p, f = ctx.p, ctx.f
        n = self.rank * f
        tpow = [ctx.one]
        for _ in range(2 * f):
            tpow.append(tpow[-1] * ctx.gen)

        def flatten(vec, s):
            # coordinates of t^s * vec mod p
            out = [0] * n
            for idx, x in enumerate(vec):
                if x:
                    y = tpow[s] * x
                    for l in range(f):
                        out[idx * f + l] = y.coeffs[l] % p
            return out

        table = [[None] * n for _ in range(n)]
        for i in range(self.rank):
            for j in range(self.rank):
                prod = self.table[i][j]
                for l in range(f):
                    for m in range(f):
                        table[i * f + l][j * f + m] = flatten(prod, l + m)
        unit = flatten(self.unit, 0)
        return FpAlgebra(p, table, unit, name=f"{self.name}/p")

    def vector_from_fp(self, fpvec):
        """Lift an F_p-restricted coordinate vector back to a Zq coordinate vector."""
        ctx = self.ctx
        f = ctx.f
        out = []
        for i in range(self.rank):
            coeffs = tuple(fpvec[i * f + l] % ctx.pk for l in range(f))
            out.append(ZqElem(ctx, coeffs))
        return tuple(out)

    def vector_to_fp(self, vec):
        ctx = self.ctx
        f = ctx.f
        out = []
        for x in vec:
            for l in range(f):
                out.append(x.coeffs[l] % ctx.p)
        return out

    # -- corners ---------------------------------------------------------------

    def corner(self, e):
        """The corner algebra eAe as a FinAlgebra plus its basis in A-coordinates."""
        from .zqlinalg import zq_column_reduce, zq_coordinates

        images = []
        for i in range(self.rank):
            b = self._basis_vec(i)
            images.append(list(self.mul(self.mul(e, b), e)))
        basis, pivots = zq_column_reduce(images, self.ctx)
        r = len(basis)
        table = []
        for i in range(r):
            row = []
            for j in range(r):
                prod = self.mul(basis[i], basis[j])
                row.append(tuple(zq_coordinates(basis, pivots, list(prod))))
            table.append(row)
        unit = tuple(zq_coordinates(basis, pivots, list(e)))
        C = FinAlgebra(self.ctx, table, unit, check=False, name=f"{self.name}.corner")
        return C, basis, pivots

    def hensel_lift_idempotent(self, seed):
        """Newton-lift a vector idempotent mod (p + nilpotents) to an exact one."""
        y = tuple(seed)
        steps = self.ctx.k.bit_length() + self.rank.bit_length() + 6
        for _ in range(steps):
            y2 = self.mul(y, y)
            if y2 == y:
                return y
            y3 = self.mul(y2, y)
            y = tuple(3 * a - 2 * b for a, b in zip(y2, y3))
        raise PrecisionExhausted("idempotent lifting did not stabilise")


# ---------------------------------------------------------------------------
# F_p algebras
# ---------------------------------------------------------------------------


class FpAlgebra:
    """Associative unital algebra over F_p given by structure vectors."""

    def __init__(self, p, table, unit, name="Abar"):
        self.p = p
        self.dim = len(table)
        self.table = table
        self.unit = [x % p for x in unit]
        self.name = name

    def basis_vec(self, i):
        return [1 if j == i else 0 for j in range(self.dim)]

    def mul(self, x, y):
        p = self.p
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if xi:
                row = self.table[i]
                for j, yj in enumerate(y):
                    if yj:
                        c = (xi * yj) % p
                        prod = row[j]
                        for m in range(self.dim):
                            if prod[m]:
                                out[m] = (out[m] + c * prod[m]) % p
        return out

    def left_regular_matrix(self, x):
        """Matrix of y -> x*y, columns indexed by basis."""
        cols = [self.mul(x, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def power(self, x, e):
        result = self.unit
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- radical ----------------------------------------------------------------

    def radical(self, certify: bool = True):
        """Basis of the Jacobson radical (echelonized rows over F_p).

        Uses the characteristic-polynomial coefficient chain: the ideal chain
        I_0 = A, I_{j+1} = {x in I_j : c_{p^j}(L_{xy}) = 0 for all y in I_j},
        terminating once p^j >= dim.  The result is certified nilpotent and the
        quotient certified radical-free.
        """
        p, n = self.p, self.dim
        if n == 0:
            return []
        basis = [self.basis_vec(i) for i in range(n)]
        j = 0
        while True:
            pj = p**j
            constraints = []
            mats = {}
            for y_idx, y in enumerate(basis):
                row_for_y = []
                for x in basis:
                    xy = self.mul(x, y)
                    key = tuple(xy)
                    if key not in mats:
                        M = self.left_regular_matrix(xy)
                        cp = _charpoly_modp(M, p)
                        mats[key] = cp
                    cp = mats[key]
                    # coefficient of lambda^(n - p^j) of the char poly
                    idx = n - pj
                    row_for_y.append(cp[idx] % p if 0 <= idx <= n else 0)
                constraints.append(row_for_y)
            null = modp_nullspace(constraints, p)
            basis = [_combine(basis, coeffs, p) for coeffs in null]
            basis = [b for b in basis if any(b)]
            ech, piv = modp_echelon(basis, p)
            basis = ech
            if pj >= n or not basis:
                break
            j += 1
        rad = basis
        if certify:
            self._certify_radical(rad)
        return rad

    def _certify_radical(self, rad):
        if rad:
            # two-sided ideal
            ech, piv = modp_echelon(rad, self.p)
            for b in range(self.dim):
                bv = self.basis_vec(b)
                for r in rad:
                    for prod in (self.mul(bv, r), self.mul(r, bv)):
                        if any(modp_in_span(ech, piv, prod, self.p)):
                            raise InconsistentInvariants("radical candidate is not an ideal")
            # nilpotency
            power = rad
            for _ in range(self.dim + 1):
                if not power:
                    break
                nxt = []
                for a in power:
                    for b in rad:
                        nxt.append(self.mul(a, b))
                nxt, _ = modp_echelon(nxt, self.p)
                if len(nxt) >= len(power) and nxt:
                    raise InconsistentInvariants("radical candidate is not nilpotent")
                power = nxt
            if power:
                raise InconsistentInvariants("radical candidate is not nilpotent")
        S, _, _ = self.quotient(rad)
        if S.dim and S.radical(certify=False):
            raise InconsistentInvariants("semisimple quotient has nonzero radical")

    def quotient(self, ideal_basis):
        """A / ideal as an FpAlgebra.

        Returns (S, project, lift): project maps A-vectors to S-coordinates,
        lift maps S basis indices to representative A-vectors.
        """
        p = self.p
        ech, piv = modp_echelon(ideal_basis, p) if ideal_basis else ([], [])
        pivset = set(piv)
        comp = [i for i in range(self.dim) if i not in pivset]

        def project(v):
            red = modp_in_span(ech, piv, v, p)
            return [red[c] % p for c in comp]

        def lift(vec_s):
            out = [0] * self.dim
            for c_idx, c in enumerate(comp):
                out[c] = vec_s[c_idx] % p
            return out

        table = []
        for i in comp:
            row = []
            for j in comp:
                row.append(project(self.mul(self.basis_vec(i), self.basis_vec(j))))
            table.append(row)
        S = FpAlgebra(p, table, project(self.unit), name=f"{self.name}/J")
        return S, project, lift

    # -- structure of a semisimple algebra ---------------------------------------

    def center_basis(self):
        # x central iff b_i x = x b_i for every basis element b_i
        n = self.dim
        constraints = []
        for i in range(n):
            bi = self.basis_vec(i)
            for r in range(n):
                row = []
                for j in range(n):
                    bj = self.basis_vec(j)
                    row.append((self.mul(bi, bj)[r] - self.mul(bj, bi)[r]) % self.p)
                constraints.append(row)
        return modp_nullspace(constraints, self.p)

    def minimal_polynomial(self, x):
        """Min poly of x, low-first coefficient list over F_p, monic."""
        p = self.p
        powers = [self.unit]
        while True:
            rows, piv = modp_echelon(powers, p)
            nxt = self.mul(powers[-1], x)
            res = modp_in_span(rows, piv, nxt, p)
            if not any(res):
                # solve for the dependency to get the min poly coefficients
                A = [[powers[r][c] for r in range(len(powers))] for c in range(self.dim)]
                from .zqlinalg import modp_solve

                sol = modp_solve(A, nxt, p)
                coeffs = [(-s) % p for s in sol] + [1]
                return coeffs
            powers.append(nxt)

    def evaluate_poly(self, coeffs, x):
        result = [0] * self.dim
        power = self.unit
        for c in coeffs:
            if c % self.p:
                result = [(a + c * b) % self.p for a, b in zip(result, power)]
            power = self.mul(power, x)
        return result

    def central_primitive_idempotents(self):
        """Central primitive idempotents of a SEMISIMPLE algebra, with block data.

        Returns a list of dicts: {'idem': vector, 'dim': dim_i, 'd': center dim,
        'n': matrix size}, deterministically ordered.
        """
        p = self.p
        if self.dim == 0:
            return []
        Z = self.center_basis()
        # split the unit using elements of the Frobenius-fixed subalgebra of Z
        frob_rows = []
        for z in Z:
            zp = self.power(z, p)
            # coordinates of z^p - z must be re-expressed in Z's span
            frob_rows.append([(a - b) % p for a, b in zip(zp, z)])
        # fixed subalgebra: combinations c of Z-basis with sum c_i (z_i^p - z_i) = 0
        constraints = [[frob_rows[i][r] for i in range(len(Z))] for r in range(self.dim)]
        null = modp_nullspace(constraints, p)
        fixed = [_combine(Z, coeffs, p) for coeffs in null]
        idems = [self.unit]
        for v in fixed:
            new = []
            for e in idems:
                w = self.mul(e, v)
                roots = _split_eigen_idempotents(self, e, w)
                new.extend(roots)
            idems = new
        out = []
        for e in idems:
            block_dim = len(modp_echelon([self.mul(self.mul(e, self.basis_vec(i)), e) for i in range(self.dim)], p)[0])
            zdim = len(modp_echelon([self.mul(e, z) for z in Z], p)[0])
            n2 = block_dim // zdim
            n = math.isqrt(n2)
            if n * n != n2 or block_dim % zdim:
                raise InconsistentInvariants("Wedderburn block dimensions inconsistent")
            out.append({"idem": e, "dim": block_dim, "d": zdim, "n": n})
        out.sort(key=lambda b: tuple(b["idem"]))
        return out

    def find_splitting_idempotent(self, rng):
        """A nontrivial idempotent of a SEMISIMPLE algebra, or None if none exists.

        None is certified: the algebra is then a division algebra (dim over its
        center is 1).
        """
        p = self.p
        blocks = self.central_primitive_idempotents()
        if len(blocks) >= 2:
            return blocks[0]["idem"]
        if not blocks:
            return None
        n = blocks[0]["n"]
        if n == 1:
            return None
        # simple, non-division: search elements whose min poly has coprime factors
        candidates = [self.basis_vec(i) for i in range(self.dim)]
        for _ in range(60 * self.dim):
            w = candidates.pop(0) if candidates else [rng.randrange(p) for _ in range(self.dim)]
            mu = self.minimal_polynomial(w)
            fac = _coprime_split_modp(mu, p, rng)
            if fac is None:
                continue
            A, B = fac
            u, v, g = _poly_ext_gcd_modp(A, B, p)
            assert len(g) == 1
            ginv = pow(g[0], -1, p)
            uA = _poly_mul_modp(_poly_scale_modp(u, ginv, p), A, p)
            e = self.evaluate_poly(uA, w)
            if any(e) and e != self.unit and self.mul(e, e) == e:
                return e
        raise InconsistentInvariants("failed to split a non-division simple algebra")


def _combine(basis, coeffs, p):
    n = len(basis[0]) if basis else 0
    out = [0] * n
    for c, b in zip(coeffs, basis):
        if c % p:
            for i in range(n):
                out[i] = (out[i] + c * b[i]) % p
    return out


def _split_eigen_idempotents(S, e, w):
    """Decompose idempotent e by the eigenvalues of w in the corner eSe.

    w must generate a split etale subalgebra of the corner (min poly squarefree
    with all roots in F_p); this holds for Frobenius-fixed central elements.
    """
    p = S.p
    # min poly of w within corner: use min poly in S of w + (1 - e)*0; w lives in eSe
    mu = _corner_minpoly(S, e, w)
    roots = [c for c in range(p) if _poly_eval_modp(mu, c, p) == 0]
    if len(roots) <= 1:
        return [e]
    out = []
    for c in roots:
        # Lagrange idempotent: prod_{c' != c} (w - c' e)/(c - c')
        idem = e
        for c2 in roots:
            if c2 == c:
                continue
            factor = [(a - c2 * b) % p for a, b in zip(w, e)]
            scale = pow((c - c2) % p, -1, p)
            factor = [(scale * a) % p for a in factor]
            idem = S.mul(idem, factor)
        if any(idem):
            if S.mul(idem, idem) != idem:
                raise InconsistentInvariants("eigen splitting produced a non-idempotent")
            out.append(idem)
    return out


def _corner_minpoly(S, e, w):
    """Min poly of w as an element of the unital corner algebra (e = unit)."""
    p = S.p
    powers = [e]
    while True:
        rows, piv = modp_echelon(powers, p)
        nxt = S.mul(powers[-1], w)
        res = modp_in_span(rows, piv, nxt, p)
        if not any(res):
            from .zqlinalg import modp_solve

            A = [[powers[r][c] for r in range(len(powers))] for c in range(S.dim)]
            sol = modp_solve(A, nxt, p)
            return [(-s) % p for s in sol] + [1]
        powers.append(nxt)


# -- F_p[x] helpers -----------------------------------------------------------


def _poly_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mul_modp(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_scale_modp(a, c, p):
    return _poly_trim([(x * c) % p for x in a])


def _poly_divmod_modp(a, b, p):
    a = [x % p for x in a]
    b = _poly_trim([x % p for x in b])
    q = [0] * max(len(a) - len(b) + 1, 1)
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv) % p
        q[i] = c
        if c:
            for j in range(len(b)):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd_modp(a, b, p):
    a, b = _poly_trim([x % p for x in a]), _poly_trim([x % p for x in b])
    while b:
        _, r = _poly_divmod_modp(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [(x * inv) % p for x in a]
    return a


def _poly_ext_gcd_modp(a, b, p):
    r0, r1 = _poly_trim(a), _poly_trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _poly_divmod_modp(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim([(x - y) % p for x, y in _zip_pad(s0, _poly_mul_modp(q, s1, p))])
        t0, t1 = t1, _poly_trim([(x - y) % p for x, y in _zip_pad(t0, _poly_mul_modp(q, t1, p))])
    return s0, t0, r0


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _poly_eval_modp(a, c, p):
    acc = 0
    for x in reversed(a):
        acc = (acc * c + x) % p
    return acc


def _poly_derivative_modp(a, p):
    return _poly_trim([(i * a[i]) % p for i in range(1, len(a))])


def _poly_powmod_modp(a, e, mod, p):
    result = [1]
    a = _poly_divmod_modp(a, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod_modp(_poly_mul_modp(result, a, p), mod, p)[1]
        a = _poly_divmod_modp(_poly_mul_modp(a, a, p), mod, p)[1]
        e >>= 1
    return result


def _coprime_split_modp(mu, p, rng):
    """Split monic mu over F_p into two coprime nontrivial factors, or None.

    None means mu is a power of a single irreducible (the element generates a
    local subalgebra, useless for splitting).
    """
    mu = _poly_trim(mu)
    if len(mu) <= 2:
        return None
    sf = _squarefree_part_modp(mu, p)
    g = _proper_factor_squarefree(sf, p, rng)
    if g is None:
        return None
    # lift to a coprime factorization of mu: A = part of mu supported on g
    A = _poly_gcd_modp(mu, _poly_powmod_unbounded(g, len(mu), p), p)
    B, rem = _poly_divmod_modp(mu, A, p)
    assert not rem
    if len(A) <= 1 or len(B) <= 1:
        return None
    return A, B


def _poly_powmod_unbounded(a, e, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mul_modp(result, base, p)
        base = _poly_mul_modp(base, base, p)
        e >>= 1
    return result


def _squarefree_part_modp(mu, p):
    """The product of the distinct irreducible factors of mu."""
    d = _poly_derivative_modp(mu, p)
    if not d:
        # mu = h(x^p): take p-th root coefficientwise (F_p perfect) and recurse
        root = [mu[i] for i in range(0, len(mu), p)]
        return _squarefree_part_modp(root, p)
    g = _poly_gcd_modp(mu, d, p)
    sf, _ = _poly_divmod_modp(mu, g, p)
    # sf may still miss factors whose multiplicity is divisible by p
    if g != [1] and len(g) > 1:
        rest = _squarefree_part_modp(g, p)
        extra, _ = _poly_divmod_modp(rest, _poly_gcd_modp(rest, sf, p), p)
        sf = _poly_mul_modp(sf, extra, p)
    if sf:
        inv = pow(sf[-1], -1, p)
        sf = [(x * inv) % p for x in sf]
    return sf


def _proper_factor_squarefree(sf, p, rng):
    """A proper monic factor of a squarefree polynomial over F_p, or None if irreducible."""
    n = len(sf) - 1
    if n <= 1:
        return None
    # distinct-degree splitting
    x = [0, 1]
    h = x
    for d in range(1, n):
        h = _poly_powmod_modp(h, p, sf, p)
        g = _poly_gcd_modp(_poly_trim([(a - b) % p for a, b in _zip_pad(h, x)]), sf, p)
        if 1 < len(g) < len(sf):
            return g
        if len(g) == len(sf):
            # all factors have degree dividing d; if d < n, equal-degree split
            if d < n:
                return _equal_degree_split(sf, d, p, rng)
            return None
    return None


def _equal_degree_split(sf, d, p, rng):
    """Cantor-Zassenhaus split of a squarefree product of degree-d irreducibles."""
    n = len(sf) - 1
    assert n % d == 0 and n // d >= 2
    for _ in range(200):
        a = [rng.randrange(p) for _ in range(n)]
        a = _poly_trim(a)
        if len(a) <= 0:
            continue
        if p == 2:
            # trace map: a + a^2 + a^4 + ... + a^(2^(d-1))
            t = a
            acc = a
            for _ in range(d - 1):
                acc = _poly_powmod_modp(acc, 2, sf, p)
                t = _poly_trim([(u + v) % p for u, v in _zip_pad(t, acc)])
            g = _poly_gcd_modp(t, sf, p)
        else:
            e = (p**d - 1) // 2
            b = _poly_powmod_modp(a, e, sf, p)
            b = _poly_trim([(u - v) % p for u, v in _zip_pad(b, [1])])
            g = _poly_gcd_modp(b, sf, p)
        if 1 < len(g) < len(sf):
            return g
    raise InconsistentInvariants("equal-degree factorization failed to split")


# ---------------------------------------------------------------------------
# the decomposition driver
# ---------------------------------------------------------------------------


class IdempotentSummand:
    """One primitive idempotent of a FinAlgebra with its Wedderburn label."""

    def __init__(self, vector, block_ranks):
        self.vector = vector
        self.block_ranks = tuple(block_ranks)

    def sort_key(self):
        return tuple(x.coeffs for x in self.vector)


class Decomposition:
    def __init__(self, algebra, summands, block_data):
        self.algebra = algebra
        self.summands = summands
        self.block_data = block_data

    @property
    def idempotents(self):
        return [s.vector for s in self.summands]

    def label_multiset(self):
        return sorted(s.block_ranks for s in self.summands)


def decompose_identity(A: FinAlgebra, seed: int = 0, start=None) -> Decomposition:
    """Complete orthogonal set of primitive idempotents of A (mod p^k).

    `start` optionally gives an idempotent to decompose instead of 1 (it must be
    an exact idempotent of A).  Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    Abar = A.fp_algebra()
    J = Abar.radical()
    S, project, lift = Abar.quotient(J)
    blocks = S.central_primitive_idempotents() if S.dim else []

    work = [start if start is not None else A.unit]
    if start is not None and not A.is_idempotent(start):
        raise InconsistentInvariants("start element is not idempotent")
    finished = []
    guard = 0
    while work:
        guard += 1
        if guard > 4 * A.rank * A.ctx.f + 16:
            raise PrecisionExhausted("idempotent splitting did not terminate")
        e = work.pop()
        if not any(e):
            continue
        C, basis, pivots = A.corner(e)
        Cbar = C.fp_algebra()
        Jc = Cbar.radical()
        Sc, proj_c, lift_c = Cbar.quotient(Jc)
        if Sc.dim == 0:
            raise InconsistentInvariants("corner reduced to zero; idempotent lost")
        split = Sc.find_splitting_idempotent(rng)
        if split is None:
            finished.append(e)
            continue
        # lift: S_c -> C/p (exact idempotent mod p) -> C (precision k) -> A
        seed_cbar = lift_c(split)
        e1_bar = _fp_hensel(Cbar, seed_cbar)
        e1_c = C.hensel_lift_idempotent(C.vector_from_fp(e1_bar))
        e1 = _corner_to_ambient(A, basis, e1_c)
        e2 = A.sub(e, e1)
        if not A.is_idempotent(e1) or not A.is_idempotent(e2):
            raise PrecisionExhausted("split produced non-idempotents")
        if any(A.mul(e1, e2)) or any(A.mul(e2, e1)):
            raise InconsistentInvariants("split idempotents are not orthogonal")
        work.extend([e1, e2])

    summands = []
    for e in finished:
        ranks = _block_ranks(A, Abar, J, S, project, blocks, e)
        summands.append(IdempotentSummand(e, ranks))
    summands.sort(key=lambda s: (s.block_ranks, s.sort_key()))
    _verify_complete(A, summands, start)
    return Decomposition(A, summands, blocks)


def _fp_hensel(Abar: FpAlgebra, x):
    """Newton-lift an idempotent-mod-radical to an exact idempotent of A/p."""
    y = list(x)
    for _ in range(Abar.dim.bit_length() + 4):
        y2 = Abar.mul(y, y)
        if y2 == y:
            return y
        y3 = Abar.mul(y2, y)
        y = [(3 * a - 2 * b) % Abar.p for a, b in zip(y2, y3)]
    raise PrecisionExhausted("mod-p idempotent lifting did not stabilise")


def _corner_to_ambient(A, corner_basis, vec):
    out = list(A.zero_vec())
    for c, bvec in zip(vec, corner_basis):
        if c:
            for i in range(A.rank):
                out[i] = out[i] + c * bvec[i]
    return tuple(out)


def _block_ranks(A, Abar, J, S, project, blocks, e):
    """Rank of the image of e in each Wedderburn block of (A/p)/J."""
    ebar = project(A.vector_to_fp(e))
    ranks = []
    for blk in blocks:
        w = S.mul(blk["idem"], ebar)
        span = [S.mul(S.basis_vec(i), w) for i in range(S.dim)]
        dim_ideal = len(modp_echelon(span, S.p)[0])
        denom = blk["n"] * blk["d"]
        if dim_ideal % denom:
            raise InconsistentInvariants("block rank not integral")
        ranks.append(dim_ideal // denom)
    return ranks


def _verify_complete(A, summands, start):
    total = A.zero_vec()
    for s in summands:
        total = A.add(total, s.vector)
        if not A.is_idempotent(s.vector):
            raise InconsistentInvariants("final summand not idempotent")
    target = start if start is not None else A.unit
    if tuple(total) != tuple(target):
        raise InconsistentInvariants("idempotent system does not sum to the identity")
    for i, s in enumerate(summands):
        for j, t in enumerate(summands):
            if i != j and any(A.mul(s.vector, t.vector)):
                raise InconsistentInvariants("idempotent system not orthogonal")


def lift_idempotents(A: FinAlgebra, seed: int = 0):
    """Complete list of orthogonal primitive idempotent vectors of A."""
    return decompose_identity(A, seed=seed).idempotents


def is_local_mod_p(A: FinAlgebra) -> bool:
    """True iff A/p modulo its radical is a division algebra (single block, n=1)."""
    Abar = A.fp_algebra()
    J = Abar.radical()
    S, _, _ = Abar.quotient(J)
    if S.dim == 0:
        return False
    blocks = S.central_primitive_idempotents()
    return len(blocks) == 1 and blocks[0]["n"] == 1


def _charpoly_modp(M, p):
    """Characteristic polynomial det(lambda I - M) over F_p, low-first, monic.

    Hessenberg reduction followed by the standard recurrence.
    """
    n = len(M)
    if n == 0:
        return [1]
    H = [[x % p for x in row] for row in M]
    for col in range(n - 1):
        piv = None
        for r in range(col + 1, n):
            if H[r][col] % p:
                piv = r
                break
        if piv is None:
            continue
        if piv != col + 1:
            H[piv], H[col + 1] = H[col + 1], H[piv]
            for r in range(n):
                H[r][piv], H[r][col + 1] = H[r][col + 1], H[r][piv]
        inv = pow(H[col + 1][col], -1, p)
        for r in range(col + 2, n):
            f = (H[r][col] * inv) % p
            if f:
                for c in range(n):
                    H[r][c] = (H[r][c] - f * H[col + 1][c]) % p
                for rr in range(n):
                    H[rr][col + 1] = (H[rr][col + 1] + f * H[rr][r]) % p
    # charpoly of Hessenberg matrix by recurrence on leading principal minors
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m(x) = (x - H[m-1][m-1]) p_{m-1}(x) - sum_{i<m-1} H[i][m-1] (prod beta) p_i(x)
        term = _poly_mul_modp(polys[m - 1], [(-H[m - 1][m - 1]) % p, 1], p)
        beta = 1
        for i in range(m - 2, -1, -1):
            beta = (beta * H[i + 1][i]) % p
            coeff = (H[i][m - 1] * beta) % p
            if coeff:
                sub = _poly_scale_modp(polys[i], coeff, p)
                term = _poly_trim([(a - b) % p for a, b in _zip_pad(term, sub)])
        polys.append(term if term else [0])
    cp = polys[n]
    out = [0] * (n + 1)
    for i, c in enumerate(cp):
        out[i] = c % p
    return out
