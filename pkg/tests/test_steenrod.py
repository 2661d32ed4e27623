import itertools
import random

import pytest

from kq.errors import InputError
from kq.steenrod import (
    F2Poly,
    carlsson_check,
    carlsson_class,
    divides,
    monomials_of_degree,
    parse_f2_poly,
    search_candidates,
    sq,
    sq3_via_adem,
)


def P(s):
    return parse_f2_poly(s)


def test_parse_and_repr():
    f = P("x^4+x*y*z+y^2")
    assert len(f.monomials) == 3
    assert P("x+x") == F2Poly.zero(3)


def test_sq0_is_identity():
    f = P("x^2*y + z^3")
    assert sq(0, f) == f


def test_sq_top_is_square():
    f = P("x*y")
    assert sq(2, f) == f * f
    g = P("x+y+z")
    assert sq(1, g) == g * g


def test_sq_vanishes_above_degree():
    f = P("x*y")
    assert not sq(3, f)
    assert not sq(5, f)


def test_sq1_of_square_is_zero():
    assert not sq(1, P("x^2"))


def test_sq1_xy():
    assert sq(1, P("x*y")) == P("x^2*y + x*y^2")


def test_cartan_formula():
    rng = random.Random(0)
    mons4 = monomials_of_degree(3, 4)
    mons3 = monomials_of_degree(3, 3)
    for _ in range(200):
        f = F2Poly(3, rng.sample(mons4, rng.randrange(1, 4)))
        g = F2Poly(3, rng.sample(mons3, rng.randrange(1, 4)))
        for k in range(0, 5):
            lhs = sq(k, f * g)
            rhs = F2Poly.zero(3)
            for i in range(k + 1):
                rhs = rhs + sq(i, f) * sq(k - i, g)
            assert lhs == rhs


def test_adem_consistency_small_monomials():
    # Sq^1 Sq^1 = 0 and Sq^1 Sq^2 = Sq^3 on all monomials of degree <= 8
    for d in range(0, 9):
        for m in monomials_of_degree(3, d):
            f = F2Poly(3, [m])
            assert not sq(1, sq(1, f))
            assert sq(1, sq(2, f)) == sq(3, f)


def test_divides():
    f = P("x^2+y^2")
    g = P("x*y+z^2")
    ok, q = divides(f, f * g)
    assert ok and q == g
    ok, _ = divides(P("x"), P("x+y"))
    assert not ok
    ok, q = divides(P("x"), F2Poly.zero(3))
    assert ok and q == F2Poly.zero(3)


def test_carlsson_class():
    f = carlsson_class()
    assert f == P("x^4 + x^2*y*z + x*y^2*z + x*y*z^2")
    res = carlsson_check(f)
    assert res["sq1_zero"] is True
    assert res["sq3_divisible"] is False


def test_carlsson_x4():
    res = carlsson_check(P("x^4"))
    assert res["sq1_zero"] is True
    assert res["sq3_divisible"] is True  # Sq^3 x^4 = 0 is divisible


def test_carlsson_x_fails_sq1():
    res = carlsson_check(P("x"))
    assert res["sq1_zero"] is False


def test_search_34_contains_carlsson_class():
    found = search_candidates(3, 4)
    assert found
    target = carlsson_class()
    # up to permutation of the variables
    perms = []
    for sigma in itertools.permutations(range(3)):
        permuted = F2Poly(3, [tuple(m[sigma[i]] for i in range(3)) for m in target.monomials])
        perms.append(permuted)
    assert any(f in perms or f == target for f in found) or target in found


def test_search_one_variable_empty():
    for d in range(1, 7):
        assert search_candidates(1, d) == []


def test_search_22_empty():
    assert search_candidates(2, 2) == []


def test_nonhomogeneous_rejected():
    with pytest.raises(InputError):
        carlsson_check(P("x + x^2"))
