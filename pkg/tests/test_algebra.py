import random

import pytest

from kq.algebra import (
    FinAlgebra,
    _charpoly_modp,
    decompose_identity,
    is_local_mod_p,
    lift_idempotents,
)
from kq.groups import builtin_group
from kq.padic import zq_context


def group_algebra(G, ctx):
    """Z_q[G] as a FinAlgebra (basis = group elements)."""
    n = G.order
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = [ctx.zero] * n
            vec[G.mul(i, j)] = ctx.one
            row.append(tuple(vec))
        table.append(row)
    unit = [ctx.zero] * n
    unit[0] = ctx.one
    return FinAlgebra(ctx, table, unit, name=f"Zq[{G.name}]")


def matrix_algebra(n, ctx):
    r = n * n
    table = []
    for a in range(r):
        i, j = divmod(a, n)
        row = []
        for b in range(r):
            k, l = divmod(b, n)
            vec = [ctx.zero] * r
            if j == k:
                vec[i * n + l] = ctx.one
            row.append(tuple(vec))
        table.append(row)
    unit = [ctx.zero] * r
    for i in range(n):
        unit[i * n + i] = ctx.one
    return FinAlgebra(ctx, table, unit, name=f"M{n}")


def product_of_fields(ctx, s):
    table = []
    for i in range(s):
        row = []
        for j in range(s):
            vec = [ctx.zero] * s
            if i == j:
                vec[i] = ctx.one
            row.append(tuple(vec))
        table.append(row)
    return FinAlgebra(ctx, table, [ctx.one] * s, name=f"Zq^{s}")


def dual_numbers(ctx):
    # Zq[t]/(t^2)
    z, o = ctx.zero, ctx.one
    table = [[(o, z), (z, o)], [(z, o), (z, z)]]
    return FinAlgebra(ctx, table, (o, z), name="Zq[t]/(t^2)")


def test_charpoly_modp():
    assert _charpoly_modp([[0, 1], [1, 0]], 5) == [4, 0, 1]  # x^2 - 1
    assert _charpoly_modp([[1, 1], [0, 1]], 3) == [1, 1, 1]  # (x-1)^2 = x^2-2x+1 = x^2+x+1
    assert _charpoly_modp([[2]], 7) == [5, 1]
    # permutation matrix of a 3-cycle: x^3 - 1
    M = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert _charpoly_modp(M, 5) == [4, 0, 0, 1]


def test_radical_matrix_algebra_is_zero():
    ctx = zq_context(2, 1, 1)
    A = matrix_algebra(2, ctx)
    assert A.fp_algebra().radical() == []


def test_radical_group_algebra_fp_zp():
    ctx = zq_context(2, 1, 1)
    A = group_algebra(builtin_group("Z2"), ctx)
    rad = A.fp_algebra().radical()
    assert len(rad) == 1  # augmentation ideal of F_2[Z/2]
    ctx3 = zq_context(3, 1, 1)
    A3 = group_algebra(builtin_group("Z3"), ctx3)
    assert len(A3.fp_algebra().radical()) == 2


def test_radical_semisimple_group_algebra():
    # F_4[Z/3] is semisimple (3 invertible)
    ctx = zq_context(2, 2, 1)
    A = group_algebra(builtin_group("Z3"), ctx)
    assert A.fp_algebra().radical() == []


def test_radical_upper_triangular():
    ctx = zq_context(2, 1, 1)
    z, o = ctx.zero, ctx.one
    # basis: E11, E12, E22
    table = [
        [(o, z, z), (z, o, z), (z, z, z)],
        [(z, z, z), (z, z, z), (z, o, z)],
        [(z, z, z), (z, z, z), (z, z, o)],
    ]
    A = FinAlgebra(ctx, table, (o, z, o), name="upper2")
    rad = A.fp_algebra().radical()
    assert len(rad) == 1 and rad[0] == [0, 1, 0]


def test_radical_s3_group_algebra_mod2():
    # F_q[S3] at p=2: radical dimension = |G| - dim(semisimple part)
    ctx = zq_context(2, 2, 1)
    A = group_algebra(builtin_group("S3"), ctx)
    rad = A.fp_algebra().radical()
    # F_bar[S3] at p=2 has simples of dims 1, 2 -> semisimple quotient dim 1+4 = 5
    assert len(rad) == 2  # dimension over F_q is 1, over F_p=F_2 it is 2


def test_lift_idempotents_product():
    ctx = zq_context(3, 1, 8)
    A = product_of_fields(ctx, 2)
    idems = lift_idempotents(A)
    assert len(idems) == 2
    vecs = sorted(tuple(1 if x == ctx.one else 0 for x in e) for e in idems)
    assert vecs == [(0, 1), (1, 0)]


def test_lift_idempotents_local_rings():
    ctx = zq_context(2, 1, 8)
    assert len(lift_idempotents(dual_numbers(ctx))) == 1
    assert is_local_mod_p(dual_numbers(ctx))
    A = group_algebra(builtin_group("Z2"), ctx)
    assert len(lift_idempotents(A)) == 1
    assert is_local_mod_p(A)


def test_lift_idempotents_matrix_algebra():
    ctx = zq_context(2, 1, 8)
    A = matrix_algebra(2, ctx)
    dec = decompose_identity(A)
    assert len(dec.summands) == 2
    # both primitive idempotents lie in the same Wedderburn class
    labels = dec.label_multiset()
    assert labels[0] == labels[1]
    # rank-1 idempotents mod p in the unique block
    assert labels[0] == (1,)


def test_lift_idempotents_group_algebra_semisimple():
    ctx = zq_context(2, 2, 8)  # zeta_3 present
    A = group_algebra(builtin_group("Z3"), ctx)
    idems = lift_idempotents(A)
    assert len(idems) == 3
    unit = [ctx.zero] * 3
    unit[0] = ctx.one
    total = [ctx.zero] * 3
    for e in idems:
        assert A.is_idempotent(e)
        total = [a + b for a, b in zip(total, e)]
    assert tuple(total) == tuple(unit)


def test_lift_idempotents_z6_mod2():
    # Zq[Z6] at p=2 = Zq[Z2] x Zq[Z2] x Zq[Z2] after splitting zeta_3: 3 locals
    ctx = zq_context(2, 2, 8)
    A = group_algebra(builtin_group("Z6"), ctx)
    idems = lift_idempotents(A)
    assert len(idems) == 3


def test_decomposition_stable_under_seed():
    ctx = zq_context(2, 2, 8)
    A = group_algebra(builtin_group("S3"), ctx)
    base = decompose_identity(A, seed=0)
    for seed in (1, 2, 3):
        other = decompose_identity(A, seed=seed)
        assert other.label_multiset() == base.label_multiset()


def test_s4_group_algebra_idempotents_mod3():
    # F_3[S4]: simples = trivial, sign, std(3), std'(3) (4 three-regular classes,
    # all absolutely irreducible over F_3).  A complete primitive system has
    # sum-of-simple-dims = 8 idempotents in 4 Wedderburn classes.
    ctx = zq_context(3, 1, 6)
    A = group_algebra(builtin_group("S4"), ctx)
    dec = decompose_identity(A)
    assert len(dec.summands) == 8
    assert len(set(dec.label_multiset())) == 4
