import math

import pytest

from kq.errors import InputError
from kq.groups import (
    Subgroup,
    all_cosets_gset,
    builtin_group,
    centralizer,
    class_ids,
    commuting_pair_classes,
    conjugacy_classes,
    coset_gset,
    double_cosets,
    group_from_json,
    p_decomposition,
    point_gset,
    regular_gset,
    subgroup_conjugacy_classes,
    sylow_subgroup,
)

ZOO = ["trivial", "Z2", "Z3", "Z4", "Z8", "Z12", "Z16", "Z2xZ2", "Z4xZ2", "D4", "Q8", "S3", "A4", "S4"]


def test_class_equation_all_builtins():
    for name in ZOO + ["A5"]:
        G = builtin_group(name)
        classes = conjugacy_classes(G)
        assert sum(c.size for c in classes) == G.order
        for c in classes:
            assert G.order % c.size == 0
            Z = centralizer(G, c.representative)
            assert c.size * Z.order == G.order


def test_trivial_and_abelian_classes():
    assert len(conjugacy_classes(builtin_group("trivial"))) == 1
    assert len(conjugacy_classes(builtin_group("Z4"))) == 4


def test_s3_classes():
    G = builtin_group("S3")
    sizes = sorted(c.size for c in conjugacy_classes(G))
    assert sizes == [1, 2, 3]
    ids = class_ids(G)
    assert ids[0] == "1a"
    assert sorted(ids) == ["1a", "2a", "3a"]


def test_centralizer_identity_and_abelian():
    G = builtin_group("S4")
    assert centralizer(G, 0).order == 24
    A = builtin_group("Z12")
    for g in range(12):
        assert centralizer(A, g).order == 12


def test_s3_transposition_centralizer():
    G = builtin_group("S3")
    t = next(c.representative for c in conjugacy_classes(G) if c.element_order == 2)
    assert centralizer(G, t).order == 2


def test_p_decomposition_round_trip():
    for name in ZOO:
        G = builtin_group(name)
        for p in (2, 3, 5, 7):
            for g in range(G.order):
                gp, gpp = p_decomposition(G, g, p)
                assert G.mul(gp, gpp) == g
                assert G.mul(gp, gpp) == G.mul(gpp, gp)
                op, opp = G.element_order(gp), G.element_order(gpp)
                while op % p == 0:
                    op //= p
                assert op == 1
                assert opp % p != 0


def test_p_decomposition_order6():
    G = builtin_group("Z12")
    g = 2  # order 6
    assert G.element_order(g) == 6
    gp, gpp = p_decomposition(G, g, 2)
    assert G.element_order(gp) == 2 and G.element_order(gpp) == 3


def test_sylow_subgroups():
    G = builtin_group("S3")
    assert sylow_subgroup(G, 3).order == 3
    assert sylow_subgroup(G, 2).order == 2
    assert sylow_subgroup(G, 5).order == 1
    G4 = builtin_group("S4")
    assert sylow_subgroup(G4, 2).order == 8
    assert sylow_subgroup(G4, 3).order == 3
    D4 = builtin_group("D4")
    assert sylow_subgroup(D4, 2).order == 8


def test_commuting_pair_counts():
    assert len(commuting_pair_classes(builtin_group("Z2"), 2)) == 4
    assert len(commuting_pair_classes(builtin_group("S3"), 2)) == 5
    # p not dividing |G|: only u = e, so count = #classes
    G = builtin_group("S3")
    assert len(commuting_pair_classes(G, 5)) == len(conjugacy_classes(G))


def test_fixed_points():
    G = builtin_group("S3")
    X = regular_gset(G)
    for c in range(1, G.order):
        assert X.fixed_points(c) == []
    pt = point_gset(G)
    assert pt.fixed_points(1) == [0]
    # S3/A3: a 3-cycle fixes both cosets
    three = next(c.representative for c in conjugacy_classes(G) if c.element_order == 3)
    A3 = Subgroup(G, tuple(sorted([0] + [g for g in range(6) if G.element_order(g) == 3])))
    X2 = coset_gset(G, A3)
    assert len(X2.fixed_points(three)) == 2


def test_double_cosets():
    G = builtin_group("S3")
    whole = Subgroup(G, tuple(range(6)))
    triv = Subgroup(G, (0,))
    assert len(double_cosets(G, whole, whole)) == 1
    assert len(double_cosets(G, triv, triv)) == 6
    t = next(c.representative for c in conjugacy_classes(G) if c.element_order == 2)
    H = Subgroup(G, (0, t))
    assert len(double_cosets(G, H, H)) == 2


def test_mackey_orbit_counts():
    # restriction of G/H to K decomposes into orbits indexed by K\G/H,
    # with orbit sizes [K : K cap xHx^-1]
    G = builtin_group("S4")
    subs = subgroup_conjugacy_classes(G)
    H = Subgroup(G, subs[3])
    K = Subgroup(G, subs[5])
    X = coset_gset(G, H)
    XK = X.restrict_to_subgroup(K)
    orbit_sizes = sorted(len(o) for o in XK.orbits())
    reps = double_cosets(G, K, H)
    expected = []
    hset = set(H.members)
    for x in reps:
        inter = [k for k in K.members if G.mul(G.mul(G.inv(x), k), x) in hset]
        expected.append(K.order // len(inter))
    assert orbit_sizes == sorted(expected)


def test_subgroup_classes_s3():
    G = builtin_group("S3")
    reps = subgroup_conjugacy_classes(G)
    assert [len(r) for r in reps] == [1, 2, 3, 6]


def test_all_cosets_gset_sizes():
    G = builtin_group("S3")
    Y = all_cosets_gset(G)
    assert Y.npoints == 6 + 3 + 2 + 1


def test_group_from_json_generators():
    G = group_from_json({"name": "S3'", "degree": 3, "generators": ["(1 2)", "(1 2 3)"]})
    assert G.order == 6
    assert len(conjugacy_classes(G)) == 3


def test_group_from_json_table_validation():
    with pytest.raises(InputError):
        group_from_json({"name": "bad", "order": 2, "mult_table": [[0, 1], [1, 1]]})


def test_exponent():
    assert builtin_group("S4").exponent == 12
    assert builtin_group("Q8").exponent == 4
    assert builtin_group("A5").exponent == math.lcm(1, 2, 3, 5)
