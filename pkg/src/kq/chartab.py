"""Exact complex character tables via the Dixon-Schneider method.

Class-sum structure constants are diagonalized over F_ell for a prime
ell = 1 (mod exp G) with ell > 2*sqrt(|G|); cyclotomic values are recovered
exactly by the discrete-Fourier counting trick and verified by orthogonality.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycNum
from .errors import InconsistentInvariants
from .groups import FiniteGroup, Subgroup, class_ids, class_map, conjugacy_classes
from .padic import is_prime
from .zqlinalg import modp_nullspace, modp_solve


class ClassFunction:
    """A class function with CycNum values, one per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        self.values = tuple(v if isinstance(v, CycNum) else CycNum.from_rational(v) for v in values)

    def __add__(self, other):
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.group is other.group and self.values == other.values

    def value_at_element(self, g: int) -> CycNum:
        return self.values[class_map(self.group)[g]]

    def conj(self):
        return ClassFunction(self.group, [v.conj() for v in self.values])

    def galois(self, t: int):
        return ClassFunction(self.group, [v.galois(t) if v.n > 1 else v for v in self.values])

    def __repr__(self):
        return f"ClassFunction({self.group.name}, {[str(v) for v in self.values]})"


class CharacterTable:
    def __init__(self, group, rows, degrees):
        self.group = group
        self.classes = conjugacy_classes(group)
        self.class_ids = class_ids(group)
        self.exponent = group.exponent
        self.rows = rows  # list of ClassFunction
        self.degrees = degrees

    @property
    def nirr(self):
        return len(self.rows)

    def irreducible(self, i) -> ClassFunction:
        return self.rows[i]

    def __repr__(self):
        return f"CharacterTable({self.group.name}, degrees={self.degrees})"


def _least_dixon_prime(e: int, order: int) -> int:
    ell = e + 1
    while True:
        if is_prime(ell) and ell * ell > 4 * order:
            return ell
        ell += e
    # ell = 1 mod e by construction


def _primitive_root(ell: int) -> int:
    phi = ell - 1
    prime_divs = sorted({d for d in range(2, phi + 1) if phi % d == 0 and is_prime(d)})
    for g in range(2, ell):
        if all(pow(g, phi // r, ell) != 1 for r in prime_divs):
            return g
    raise AssertionError


def character_table(G: FiniteGroup) -> CharacterTable:
    if "char_table" in G._cache:
        return G._cache["char_table"]
    classes = conjugacy_classes(G)
    cmap = class_map(G)
    r = len(classes)
    n = G.order
    e = G.exponent

    if r == 1:
        table = CharacterTable(G, [ClassFunction(G, [CycNum.from_rational(1)])], [1])
        G._cache["char_table"] = table
        return table

    ell = _least_dixon_prime(e, n)
    inv_class = [cmap[G.inv(c.representative)] for c in classes]

    # structure constants a[i][j][k]: #{x in C_i : x^-1 z_k in C_j}
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k in range(r):
        zk = classes[k].representative
        for i in range(r):
            for x in classes[i].members:
                j = cmap[G.mul(G.inv(x), zk)]
                a[i][j][k] += 1

    # simultaneous eigenvectors of the class matrices over F_ell
    def class_matrix(i):
        return [[a[i][j][k] % ell for k in range(r)] for j in range(r)]

    spaces = [[_unit_vec(r, t) for t in range(r)]]
    spaces = [spaces[0]]
    for i in range(1, r):
        Ai = class_matrix(i)
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            # matrix of A_i restricted to span(basis)
            Vt = [[basis[s][row] for s in range(len(basis))] for row in range(r)]
            B = []
            for v in basis:
                img = [sum(Ai[row][c] * v[c] for c in range(r)) % ell for row in range(r)]
                coords = modp_solve(Vt, img, ell)
                if coords is None:
                    raise InconsistentInvariants("class matrix does not preserve eigenspace")
                B.append(coords)
            Bm = [[B[s][t] % ell for s in range(len(basis))] for t in range(len(basis))]
            for lam in range(ell):
                M = [[(Bm[x][y] - (lam if x == y else 0)) % ell for y in range(len(basis))] for x in range(len(basis))]
                null = modp_nullspace(M, ell)
                if null:
                    sub = []
                    for coeffs in null:
                        vec = [0] * r
                        for cidx, cval in enumerate(coeffs):
                            if cval:
                                for t in range(r):
                                    vec[t] = (vec[t] + cval * basis[cidx][t]) % ell
                        sub.append(vec)
                    new_spaces.append(sub)
            total = sum(len(s) for s in new_spaces if s)
        spaces = new_spaces
        if all(len(s) == 1 for s in spaces):
            break
    if not all(len(s) == 1 for s in spaces) or len(spaces) != r:
        raise InconsistentInvariants("class matrices did not split into r eigenvectors")

    # central character values omega and degrees
    omegas = []
    for basis in spaces:
        w = basis[0]
        if w[0] % ell == 0:
            raise InconsistentInvariants("eigenvector vanishes at the identity class")
        inv0 = pow(w[0], -1, ell)
        omegas.append([(x * inv0) % ell for x in w])

    degrees_mod = []
    degrees = []
    for w in omegas:
        s = 0
        for i in range(r):
            ci = len(classes[i].members)
            s = (s + w[i] * w[inv_class[i]] * pow(ci, -1, ell)) % ell
        d2 = (n * pow(s, -1, ell)) % ell
        d = None
        for cand in range(1, math.isqrt(n) + 1):
            if (cand * cand) % ell == d2:
                d = cand
                break
        if d is None:
            raise InconsistentInvariants("no integer degree matches")
        degrees_mod.append(d % ell)
        degrees.append(d)

    # character values mod ell, then exact recovery per class
    z = pow(_primitive_root(ell), (ell - 1) // e, ell)
    power_class = [[cmap[G.power(classes[i].representative, s)] for s in range(e + 1)] for i in range(r)]

    rows = []
    for idx, w in enumerate(omegas):
        d = degrees[idx]
        chi_mod = [
            (d * w[i] * pow(len(classes[i].members), -1, ell)) % ell for i in range(r)
        ]
        values = []
        for i in range(r):
            ni = classes[i].element_order
            zn = pow(z, e // ni, ell)
            ninv = pow(ni, -1, ell)
            coeffs = {}
            for j in range(ni):
                mj = 0
                for s in range(ni):
                    mj = (mj + chi_mod[power_class[i][s]] * pow(zn, (-j * s) % ni, ell)) % ell
                mj = (mj * ninv) % ell
                if mj > 2 * math.isqrt(n):
                    raise InconsistentInvariants("eigenvalue multiplicity out of range")
                if mj:
                    coeffs[j] = mj
            val = CycNum.from_rational(0, 1)
            for j, mj in coeffs.items():
                val = val + CycNum.zeta(e, j * (e // ni)) * mj
            values.append(val)
        rows.append((degrees[idx], values))

    one = CycNum.from_rational(1)
    rows.sort(
        key=lambda t: (
            t[0],
            not all(v == one for v in t[1]),  # trivial character first among degree 1
            [v.sort_key() for v in t[1]],
        )
    )
    cfs = [ClassFunction(G, vals) for _, vals in rows]
    degrees = [d for d, _ in rows]
    table = CharacterTable(G, cfs, degrees)
    _verify_table(table)
    G._cache["char_table"] = table
    return table


def _unit_vec(r, t):
    v = [0] * r
    v[t] = 1
    return v


def _verify_table(table: CharacterTable):
    G = table.group
    n = G.order
    r = len(table.classes)
    if sum(d * d for d in table.degrees) != n:
        raise InconsistentInvariants("degrees do not satisfy sum of squares = |G|")
    for i in range(r):
        for j in range(r):
            ip = inner_product(table.rows[i], table.rows[j])
            expected = 1 if i == j else 0
            if ip != CycNum.from_rational(expected):
                raise InconsistentInvariants(f"row orthogonality fails at ({i},{j})")
    if table.rows[0].values != tuple(CycNum.from_rational(1) for _ in range(r)):
        raise InconsistentInvariants("first row is not the trivial character")
    # second orthogonality
    for gi in range(r):
        for hi in range(r):
            s = CycNum.from_rational(0)
            for row in table.rows:
                s = s + row.values[gi] * row.values[hi].conj()
            expected = n // len(table.classes[gi].members) if gi == hi else 0
            if s != CycNum.from_rational(expected):
                raise InconsistentInvariants("column orthogonality fails")


# ---------------------------------------------------------------------------
# class-function calculus
# ---------------------------------------------------------------------------


def inner_product(f: ClassFunction, g: ClassFunction) -> CycNum:
    """(1/|G|) sum_x f(x) conj(g(x)), computed classwise."""
    G = f.group
    assert g.group is G
    classes = conjugacy_classes(G)
    total = CycNum.from_rational(0)
    for i, c in enumerate(classes):
        total = total + f.values[i] * g.values[i].conj() * c.size
    return total * Fraction(1, G.order)


def restrict(f: ClassFunction, H: Subgroup) -> ClassFunction:
    G = f.group
    sub, embed = H.as_group()
    cmap = class_map(G)
    values = []
    for c in conjugacy_classes(sub):
        parent = embed[c.representative]
        values.append(f.values[cmap[parent]])
    return ClassFunction(sub, values)


def induce(f: ClassFunction, H: Subgroup, G: FiniteGroup) -> ClassFunction:
    """Induction from a subgroup: Ind f(g) = (1/|H|) sum_{x: x^-1 g x in H} f(x^-1 g x)."""
    sub, embed = H.as_group()
    assert f.group is sub
    pos = {g: i for i, g in enumerate(embed)}
    scmap = class_map(sub)
    values = []
    for c in conjugacy_classes(G):
        g = c.representative
        total = CycNum.from_rational(0)
        for x in range(G.order):
            y = G.conjugate(G.inv(x), g)
            if y in pos:
                total = total + f.values[scmap[pos[y]]]
        values.append(total * Fraction(1, len(H.members)))
    return ClassFunction(G, values)


def permutation_character(X) -> ClassFunction:
    """Character of the permutation module: g -> #X^g."""
    G = X.group
    values = [len(X.fixed_points(c.representative)) for c in conjugacy_classes(G)]
    return ClassFunction(G, values)


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [1] * len(conjugacy_classes(G)))


def regular_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [G.order if c.representative == 0 else 0 for c in conjugacy_classes(G)])
