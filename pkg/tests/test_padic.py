import random
from fractions import Fraction

import pytest

from kq.cyclotomic import CycNum
from kq.errors import DivisibilityError, NotPIntegral
from kq.padic import default_q_exponent, zq_context


def test_teichmueller_generator_contract():
    for p, f in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 4)]:
        ctx = zq_context(p, f, 8)
        assert ctx.gen ** (ctx.q - 1) == ctx.one
        assert list(c % p for c in ctx.h) == [c % p for c in ctx.h]  # sanity


def test_half_embeds_as_five_mod_nine():
    ctx = zq_context(3, 1, 2)
    assert ctx.from_rational(Fraction(1, 2)).coeffs == (5,)


def test_one_over_p_raises():
    ctx = zq_context(3, 1, 4)
    with pytest.raises(NotPIntegral):
        ctx.from_rational(Fraction(1, 3))


def test_zeta_m_exact_order():
    ctx = zq_context(2, 2, 8)  # q = 4, zeta_3 available
    z = ctx.zeta(3)
    assert z**3 == ctx.one and z != ctx.one and z * z != ctx.one
    ctx2 = zq_context(3, 2, 6)  # q = 9, zeta_8 available
    z8 = ctx2.zeta(8)
    for j in range(1, 8):
        assert z8**j != ctx2.one
    assert z8**8 == ctx2.one


def test_zeta_power_orders():
    ctx = zq_context(3, 2, 5)
    m = 8
    z = ctx.zeta(m)
    import math

    for j in range(1, m + 1):
        order = m // math.gcd(j, m)
        w = z**j
        assert w**order == ctx.one
        for d in range(1, order):
            if order % d == 0 and d < order:
                assert w**d != ctx.one


def test_minus_one_is_order_two_teichmueller():
    ctx = zq_context(5, 1, 6)
    z = ctx.zeta(2)
    assert z == ctx.from_int(-1)


def test_divisibility_error():
    ctx = zq_context(3, 1, 4)
    with pytest.raises(DivisibilityError):
        ctx.zeta(5)


def test_embed_cyc_is_ring_hom():
    rng = random.Random(11)
    ctx = zq_context(2, 2, 8)  # contains zeta_3
    for _ in range(100):
        a = CycNum(3, [Fraction(rng.randint(-6, 6), rng.choice([1, 3, 5])) for _ in range(2)])
        b = CycNum(3, [Fraction(rng.randint(-6, 6)) for _ in range(2)])
        assert ctx.embed_cyc(a + b) == ctx.embed_cyc(a) + ctx.embed_cyc(b)
        assert ctx.embed_cyc(a * b) == ctx.embed_cyc(a) * ctx.embed_cyc(b)


def test_embed_cyc_kills_cyclotomic_polynomial():
    ctx = zq_context(2, 4, 8)  # q = 16: zeta_3, zeta_5, zeta_15
    for m in (3, 5, 15):
        z = ctx.zeta(m)
        assert z**m == ctx.one
        img = ctx.embed_cyc(CycNum.zeta(m))
        assert img == z


def test_inverse():
    ctx = zq_context(2, 2, 8)
    rng = random.Random(5)
    for _ in range(50):
        x = None
        while x is None or not x.is_unit():
            from kq.padic import ZqElem

            x = ZqElem(ctx, (rng.randrange(ctx.pk), rng.randrange(ctx.pk)))
        assert x * x.inv() == ctx.one


def test_reduce_cyc_mod_p_kills_p_power_roots():
    ctx = zq_context(2, 2, 8)
    # zeta_4 has 2-power order; reduction sends it to 1
    assert ctx.reduce_cyc_mod_p(CycNum.zeta(4)) == ctx.residue.one
    # zeta_12 = zeta_4 * zeta_3 pattern: reduction has order 3
    r = ctx.reduce_cyc_mod_p(CycNum.zeta(12))
    assert r**3 == ctx.residue.one and r != ctx.residue.one


def test_reduce_cyc_mod_p_is_ring_hom():
    ctx = zq_context(2, 2, 4)
    rng = random.Random(2)
    for _ in range(60):
        a = CycNum(12, [Fraction(rng.randint(-5, 5)) for _ in range(4)])
        b = CycNum(12, [Fraction(rng.randint(-5, 5)) for _ in range(4)])
        ra, rb = ctx.reduce_cyc_mod_p(a), ctx.reduce_cyc_mod_p(b)
        assert ctx.reduce_cyc_mod_p(a * b) == ra * rb
        assert ctx.reduce_cyc_mod_p(a + b) == ra + rb


def test_default_q_exponent():
    assert default_q_exponent(2, 3) == 2
    assert default_q_exponent(2, 15) == 4
    assert default_q_exponent(3, 4) == 2
    assert default_q_exponent(3, 2) == 1
    assert default_q_exponent(5, 1) == 1


def test_json_round_trip():
    from kq.padic import ZqElem

    ctx = zq_context(3, 2, 4)
    x = ctx.zeta(8) + ctx.from_int(7)
    assert ZqElem.from_json(x.to_json()) == x
