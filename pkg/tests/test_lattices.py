import random

import pytest

from kq.errors import InputError
from kq.lattices import (
    ZpZpLattice,
    e2_page,
    group_cohomology,
    heller_reiner,
    model_lattice,
    quotient_lattice,
    random_unimodular,
    regular_lattice,
    trivial_lattice,
)


def test_model_lattices_validate():
    for p in (2, 3, 5):
        regular_lattice(p, 8)
        trivial_lattice(p, 8)
        quotient_lattice(p, 8)
    with pytest.raises(InputError):
        ZpZpLattice(2, 4, [[3]])  # 3^2 != 1 mod 16


def test_cohomology_v1():
    for p in (2, 3, 5):
        V = regular_lattice(p, 8)
        assert group_cohomology(V, 0) == ("free", 1)
        assert group_cohomology(V, 1) == []
        assert group_cohomology(V, 2) == []


def test_cohomology_v2():
    for p in (2, 3, 5):
        V = trivial_lattice(p, 8)
        assert group_cohomology(V, 0) == ("free", 1)
        assert group_cohomology(V, 1) == []
        assert group_cohomology(V, 2) == [1]


def test_cohomology_v3():
    for p in (2, 3, 5):
        V = quotient_lattice(p, 8)
        assert group_cohomology(V, 0) == ("free", 0)
        assert group_cohomology(V, 1) == [1]
        assert group_cohomology(V, 2) == []


def test_cohomology_additive():
    p = 3
    V = regular_lattice(p, 8).direct_sum(trivial_lattice(p, 8)).direct_sum(quotient_lattice(p, 8))
    assert group_cohomology(V, 0) == ("free", 2)
    assert group_cohomology(V, 1) == [1]
    assert group_cohomology(V, 2) == [1]


def test_heller_reiner_models():
    p = 3
    assert heller_reiner(regular_lattice(p, 8)) == heller_reiner(regular_lattice(p, 8))
    hr = heller_reiner(regular_lattice(p, 8))
    assert (hr.a, hr.b, hr.c) == (1, 0, 0)
    hr = heller_reiner(trivial_lattice(p, 8))
    assert (hr.a, hr.b, hr.c) == (0, 1, 0)
    hr = heller_reiner(quotient_lattice(p, 8))
    assert (hr.a, hr.b, hr.c) == (0, 0, 1)


def test_heller_reiner_random_conjugates():
    rng = random.Random(42)
    for p in (2, 3):
        for _ in range(5):
            a, b, c = rng.randrange(3), rng.randrange(3), rng.randrange(3)
            if a + b + c == 0:
                a = 1
            V = model_lattice(p, 8, a, b, c)
            U = random_unimodular(p, 8, V.rank, rng)
            W = V.conjugate(U)
            hr = heller_reiner(W)
            assert (hr.a, hr.b, hr.c) == (a, b, c)


def test_dimension_identity():
    p = 5
    V = model_lattice(p, 8, 2, 1, 1)
    hr = heller_reiner(V)
    assert p * hr.a + hr.b + (p - 1) * hr.c == V.rank


def test_e2_page_trivial_input():
    page = e2_page(None, None, 6)
    assert all(page.cell(s, t) == (0, []) for s in range(7) for t in (0, 1))
    assert page.tags == []


def test_e2_page_v2():
    p = 3
    page = e2_page(trivial_lattice(p, 8), None, 8)
    assert page.cell(0, 0) == (1, [])
    assert page.cell(1, 0) == (0, [])
    assert page.cell(2, 0) == (0, [1])
    assert page.cell(3, 0) == (0, [])
    assert page.cell(4, 0) == (0, [1])
    assert page.tags == [{"type": "free", "generator_bidegree": [0, 0], "count": 1}]


def test_e2_page_v1_concentrated():
    p = 2
    page = e2_page(regular_lattice(p, 8), None, 6)
    assert page.cell(0, 0) == (1, [])
    for s in range(1, 7):
        assert page.cell(s, 0) == (0, [])
    assert page.tags == [{"type": "P", "generator_bidegree": [0, 0], "count": 1}]


def test_e2_page_mixed():
    p = 2
    pi0 = trivial_lattice(p, 8)
    pi1 = quotient_lattice(p, 8)
    page = e2_page(pi0, pi1, 5)
    assert page.cell(1, 1) == (0, [1])
    assert page.cell(2, 1) == (0, [])
    assert {t["type"] for t in page.tags} == {"free", "tors"}


def test_json_round_trip():
    V = model_lattice(3, 8, 1, 1, 0)
    W = ZpZpLattice.from_json(V.to_json())
    assert W.T == V.T
