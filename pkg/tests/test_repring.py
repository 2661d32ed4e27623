from fractions import Fraction

import pytest

from kq.cyclotomic import CycNum
from kq.errors import CorrespondentUndefined
from kq.groups import (
    all_cosets_gset,
    builtin_group,
    centralizer,
    class_ids,
    conjugacy_classes,
    point_gset,
    regular_gset,
)
from kq.repring import (
    block_idempotent_suite,
    blocks_of_zqG,
    bonnafe_idempotent,
    brauer_correspondent,
    default_context,
    kq0_of_gset,
    kuhn_ideal,
    p_power_classes,
    p_prime_classes,
    rep_ring,
)


def _class_index_by_order(G, order):
    for i, c in enumerate(conjugacy_classes(G)):
        if c.element_order == order:
            return i
    raise AssertionError


def test_bonnafe_p_group_single_class():
    G = builtin_group("Z4")
    ctx = default_context(G, 2)
    e = bonnafe_idempotent(G, 2, ctx, 0)
    R = rep_ring(G, ctx)
    assert e == R.unit()


def test_bonnafe_s3_p3_transpositions():
    G = builtin_group("S3")
    ctx = default_context(G, 3)
    ci = _class_index_by_order(G, 2)
    e = bonnafe_idempotent(G, 3, ctx, ci)
    # (triv - sign)/2 in the irreducible basis (triv, sign, std ordering by degree)
    R = rep_ring(G, ctx)
    half = ctx.from_rational(Fraction(1, 2))
    expected = (half, -half + ctx.zero, ctx.zero)
    # identify sign character: degree-1 row that is not trivial
    assert R.table.degrees == [1, 1, 2]
    assert e == expected


def test_bonnafe_z2_p3():
    G = builtin_group("Z2")
    ctx = default_context(G, 3)
    e = bonnafe_idempotent(G, 3, ctx, 0)
    half = ctx.from_rational(Fraction(1, 2))
    assert e == (half, half)


def test_suite_counts():
    for name, p, expected in [
        ("Z2", 3, 2),
        ("S3", 3, 2),
        ("S3", 2, 2),
        ("A4", 2, 3),
        ("S4", 2, 2),
        ("S4", 3, 4),
        ("D4", 2, 1),
        ("Q8", 2, 1),
    ]:
        G = builtin_group(name)
        ctx = default_context(G, p)
        suite = block_idempotent_suite(G, p, ctx)
        assert len(suite) == expected == len(p_prime_classes(G, p))


def test_kuhn_ideal_p_group():
    G = builtin_group("Z8")
    ctx = default_context(G, 2)
    kq = kuhn_ideal(G, 2, ctx)
    assert kq.ideal_basis == []
    assert kq.quotient_rank == 8
    assert kq.snf_match and kq.spans_match


def test_kuhn_ideal_s3_p3():
    G = builtin_group("S3")
    ctx = default_context(G, 3)
    kq = kuhn_ideal(G, 3, ctx)
    assert len(kq.ideal_basis) == 1
    assert kq.quotient_rank == 2
    assert kq.snf_match and kq.spans_match
    # ideal spanned by triv - sign
    vec = kq.ideal_basis[0]
    assert sorted(vec) == [-1, 0, 1]


def test_kuhn_rank_prime_not_dividing():
    G = builtin_group("S3")
    ctx = default_context(G, 5)
    kq = kuhn_ideal(G, 5, ctx)
    assert kq.quotient_rank == 1


def test_kuhn_ranks_match_p_power_classes():
    for name in ("S3", "A4", "D4", "S4", "Z12", "Q8"):
        G = builtin_group(name)
        for p in (2, 3):
            if G.order % p:
                continue
            ctx = default_context(G, p)
            kq = kuhn_ideal(G, p, ctx)
            assert kq.quotient_rank == len(p_power_classes(G, p))
            assert kq.snf_match and kq.spans_match


def test_kq0_point_zp():
    G = builtin_group("Z3")
    ctx = default_context(G, 3)
    res = kq0_of_gset(G, 3, ctx, point_gset(G))
    assert res["total_rank"] == 3  # rank = #p-power classes = p for Z/p at p
    res_free = kq0_of_gset(G, 3, ctx, regular_gset(G))
    assert res_free["total_rank"] == 1


def test_kq0_additivity():
    from kq.groups import disjoint_union

    G = builtin_group("S3")
    ctx = default_context(G, 2)
    X = point_gset(G)
    Y = regular_gset(G)
    rx = kq0_of_gset(G, 2, ctx, X)["total_rank"]
    ry = kq0_of_gset(G, 2, ctx, Y)["total_rank"]
    rxy = kq0_of_gset(G, 2, ctx, disjoint_union(X, Y))["total_rank"]
    assert rxy == rx + ry


def test_blocks_s3():
    G = builtin_group("S3")
    ctx3 = default_context(G, 3)
    b3 = blocks_of_zqG(G, 3, ctx3)
    assert b3.blocks == [(0, 1, 2)]
    ctx2 = default_context(G, 2)
    b2 = blocks_of_zqG(G, 2, ctx2)
    assert len(b2.blocks) == 2
    # {triv, sign} together, std alone (degrees are [1,1,2])
    assert (0, 1) in b2.blocks and (2,) in b2.blocks


def test_blocks_semisimple_case():
    G = builtin_group("Z4")
    ctx = default_context(G, 3)
    b = blocks_of_zqG(G, 3, ctx)
    assert b.nblocks == 4


def test_brauer_identity_element_is_identity_map():
    G = builtin_group("S4")
    ctx = default_context(G, 2)
    blocks = blocks_of_zqG(G, 2, ctx)
    for b in range(blocks.nblocks):
        assert brauer_correspondent(G, 2, ctx, 0, b) == b


def test_brauer_s3_p2():
    G = builtin_group("S3")
    ctx = default_context(G, 2)
    u = next(c.representative for c in conjugacy_classes(G) if c.element_order == 2)
    H = centralizer(G, u)
    sub, _ = H.as_group()
    hb = blocks_of_zqG(sub, 2, ctx)
    assert hb.nblocks == 1
    target = brauer_correspondent(G, 2, ctx, u, 0)
    gb = blocks_of_zqG(G, 2, ctx)
    assert gb.blocks[target] == (0, 1)  # principal block {triv, sign}


def test_brauer_s3_p3():
    G = builtin_group("S3")
    ctx = default_context(G, 3)
    u = next(c.representative for c in conjugacy_classes(G) if c.element_order == 3)
    H = centralizer(G, u)
    sub, _ = H.as_group()
    hb = blocks_of_zqG(sub, 3, ctx)
    # A3 at p=3: one block
    assert hb.nblocks == 1
    target = brauer_correspondent(G, 3, ctx, u, 0)
    assert blocks_of_zqG(G, 3, ctx).blocks[target] == (0, 1, 2)


def test_brauer_rejects_non_p_element():
    G = builtin_group("S3")
    ctx = default_context(G, 2)
    u3 = next(c.representative for c in conjugacy_classes(G) if c.element_order == 3)
    with pytest.raises(CorrespondentUndefined):
        brauer_correspondent(G, 2, ctx, u3, 0)
