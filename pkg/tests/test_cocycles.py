import random
from fractions import Fraction

from kq.cocycles import (
    FinAbGroup,
    class_order,
    coboundary,
    coboundary_witness,
    diagonal_restriction,
    eprime_cocycle,
    is_cocycle,
    parse_abelian,
    standard_cocycle,
)


def test_parse():
    assert parse_abelian("Z/4").factors == (4,)
    assert parse_abelian("Z2xZ2").factors == (2, 2)
    assert parse_abelian("trivial").factors == ()


def test_standard_cocycle_trivial_group():
    E = standard_cocycle(FinAbGroup([]))
    ok, _ = is_cocycle(E)
    assert ok
    assert class_order(E) == 1


def test_standard_cocycle_z2_values():
    G = FinAbGroup([2])
    E = standard_cocycle(G)
    vals = {E(a, b) for a in E.group.elements() for b in E.group.elements()}
    assert vals == {Fraction(0), Fraction(1, 2)}
    ok, _ = is_cocycle(E)
    assert ok


def test_standard_cocycle_z4_values():
    G = FinAbGroup([4])
    E = standard_cocycle(G)
    vals = {E(a, b) for a in E.group.elements() for b in E.group.elements()}
    assert vals == {Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)}


def test_class_orders():
    for p, e in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
        G = FinAbGroup([p**e])
        E = standard_cocycle(G)
        assert class_order(E) == p**e


def test_class_order_product_group():
    G = FinAbGroup([2, 4])
    E = standard_cocycle(G)
    assert class_order(E) == 4  # exponent of G


def test_coboundaries_pass_and_are_trivial():
    rng = random.Random(0)
    G = FinAbGroup([2, 2])
    for _ in range(10):
        nu = {a: Fraction(rng.randrange(8), 8) for a in G.elements()}
        c = coboundary(G, nu)
        ok, _ = is_cocycle(c)
        assert ok  # d^2 = 0
        assert class_order(c) == 1
        wit = coboundary_witness(c)
        assert wit is not None
        check = coboundary(G, wit)
        for a in G.elements():
            for b in G.elements():
                assert check(a, b) == c(a, b)


def test_witness_none_for_nontrivial_class():
    G = FinAbGroup([2])
    E = standard_cocycle(G)
    assert coboundary_witness(E) is None


def test_perturbed_table_fails():
    G = FinAbGroup([2])
    E = standard_cocycle(G)
    table = E.table()
    els = E.group.elements()
    bad_key = (els[1], els[2])
    bumped = dict(table)
    bumped[bad_key] = bumped[bad_key] + Fraction(1, 3)

    from kq.cocycles import Cocycle2

    c = Cocycle2(E.group, lambda a, b: bumped[(a, b)])
    ok, witness = is_cocycle(c)
    assert not ok and witness is not None


def test_eprime_is_cocycle_and_diagonal_is_coboundary():
    for factors in ([2], [4], [2, 2], [3]):
        G = FinAbGroup(factors)
        ep = eprime_cocycle(G)
        ok, _ = is_cocycle(ep)
        assert ok
        diag = diagonal_restriction(G)
        ok, _ = is_cocycle(diag)
        assert ok
        wit = coboundary_witness(diag)
        assert wit is not None
        # the analytic witness nu(phi, g) = -phi(g) also certifies the class
        n = len(G.factors)
        nu = {}
        for a in diag.group.elements():
            phi, g = a[:n], a[n:]
            nu[a] = -G.pairing(g, phi)
        check = coboundary(diag.group, nu)
        for a in diag.group.elements():
            for b in diag.group.elements():
                assert check(a, b) == diag(a, b)


def test_zero_cocycle_witness_is_zeroable():
    G = FinAbGroup([3])
    from kq.cocycles import Cocycle2

    zero = Cocycle2(G, lambda a, b: Fraction(0))
    wit = coboundary_witness(zero)
    assert wit is not None
    check = coboundary(G, wit)
    assert all(check(a, b) == 0 for a in G.elements() for b in G.elements())
