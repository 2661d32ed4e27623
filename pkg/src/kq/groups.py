"""Finite groups as multiplication tables, subgroups, and finite G-sets.

Elements are indices 0..order-1 with 0 the identity.  All derived data
(classes, centralizers, subgroup lattice) uses canonical orderings so that
downstream matrix layouts are reproducible across runs.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass

from .errors import InputError, InconsistentInvariants

_ASSOC_FULL_BOUND = 64
_ASSOC_SAMPLES = 300


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, name: str, mult, check: bool = True):
        self.name = name
        self.mult = tuple(tuple(row) for row in mult)
        self.order = len(self.mult)
        self._cache: dict = {}
        if check:
            self._validate()

    def _validate(self):
        n = self.order
        if any(len(row) != n for row in self.mult):
            raise InputError("multiplication table is not square")
        for g in range(n):
            if self.mult[0][g] != g or self.mult[g][0] != g:
                raise InputError("index 0 is not a two-sided identity")
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if self.mult[g][h] == 0:
                    inv[g] = h
                    break
            if inv[g] is None or self.mult[inv[g]][g] != 0:
                raise InputError(f"element {g} has no two-sided inverse")
        if n <= _ASSOC_FULL_BOUND:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(_ASSOC_SAMPLES)
            )
        for a, b, c in triples:
            if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                raise InputError(f"associativity fails at ({a},{b},{c})")
        self._cache["inv"] = inv

    # -- basic operations ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    @property
    def inverse(self):
        if "inv" not in self._cache:
            inv = [0] * self.order
            for g in range(self.order):
                for h in range(self.order):
                    if self.mult[g][h] == 0:
                        inv[g] = h
                        break
            self._cache["inv"] = inv
        return self._cache["inv"]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(g), -k)
        result = 0
        base = g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def element_order(self, g: int) -> int:
        cur = g
        k = 1
        while cur != 0:
            cur = self.mul(cur, g)
            k += 1
        return k

    @property
    def element_orders(self):
        if "orders" not in self._cache:
            self._cache["orders"] = [self.element_order(g) for g in range(self.order)]
        return self._cache["orders"]

    @property
    def exponent(self) -> int:
        if "exponent" not in self._cache:
            self._cache["exponent"] = math.lcm(*self.element_orders)
        return self._cache["exponent"]

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = all(
                self.mult[a][b] == self.mult[b][a]
                for a in range(self.order)
                for b in range(a)
            )
        return self._cache["abelian"]

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple
    element_order: int

    @property
    def size(self):
        return len(self.members)


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    members: tuple  # sorted element indices

    def __post_init__(self):
        ms = set(self.members)
        if 0 not in ms:
            raise InputError("subgroup must contain the identity")
        for a in self.members:
            if self.group.inv(a) not in ms:
                raise InputError("subgroup not closed under inverse")
            for b in self.members:
                if self.group.mul(a, b) not in ms:
                    raise InputError("subgroup not closed under multiplication")
        if self.group.order % len(self.members) != 0:
            raise InconsistentInvariants("subgroup order does not divide group order")

    @property
    def order(self):
        return len(self.members)

    def as_group(self):
        """Reindexed FiniteGroup plus the embedding list (local index -> parent index)."""
        key = ("as_group", self.members)
        if key not in self.group._cache:
            embed = list(self.members)  # sorted, identity (=0) first
            pos = {g: i for i, g in enumerate(embed)}
            mult = [[pos[self.group.mul(a, b)] for b in embed] for a in embed]
            sub = FiniteGroup(f"{self.group.name}|sub{len(embed)}_{embed[1] if len(embed)>1 else 0}", mult, check=False)
            self.group._cache[key] = (sub, embed)
        return self.group._cache[key]

    def contains(self, g: int) -> bool:
        return g in set(self.members)


class FiniteGSet:
    """A finite left G-set given by its full action table."""

    def __init__(self, group: FiniteGroup, action, name: str = "X", check: bool = True):
        self.group = group
        self.action = tuple(tuple(row) for row in action)  # [element][point]
        self.npoints = len(self.action[0]) if self.action else 0
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        if len(self.action) != G.order:
            raise InputError("action table must have one row per group element")
        n = self.npoints
        if self.action[0] != tuple(range(n)):
            raise InputError("identity must act as the identity permutation")
        if G.order * G.order * n <= 200000:
            pairs = itertools.product(range(G.order), repeat=2)
        else:
            rng = random.Random(0)
            pairs = [
                (rng.randrange(G.order), rng.randrange(G.order))
                for _ in range(_ASSOC_SAMPLES)
            ]
        for g, h in pairs:
            gh = G.mul(g, h)
            for x in range(n):
                if self.action[gh][x] != self.action[g][self.action[h][x]]:
                    raise InputError(f"action fails composition at g={g}, h={h}, x={x}")

    def apply(self, g: int, x: int) -> int:
        return self.action[g][x]

    def orbits(self):
        """List of orbits, each a sorted tuple of points; deterministic order."""
        if not hasattr(self, "_orbits"):
            seen = [False] * self.npoints
            orbits = []
            for x in range(self.npoints):
                if seen[x]:
                    continue
                orbit = sorted({self.action[g][x] for g in range(self.group.order)})
                for y in orbit:
                    seen[y] = True
                orbits.append(tuple(orbit))
            self._orbits = orbits
        return self._orbits

    def stabilizer(self, x: int) -> Subgroup:
        members = tuple(sorted(g for g in range(self.group.order) if self.action[g][x] == x))
        return Subgroup(self.group, members)

    def transporter(self, x: int, y: int):
        """Some g with g.x = y, or None."""
        for g in range(self.group.order):
            if self.action[g][x] == y:
                return g
        return None

    def fixed_points(self, c: int):
        """Sorted list of points fixed by the element c."""
        return [x for x in range(self.npoints) if self.action[c][x] == x]

    def restrict_to_subgroup(self, sub: Subgroup, points=None, name=None):
        """The action of `sub` (as its own FiniteGroup) on a stable point subset."""
        subgroup, embed = sub.as_group()
        if points is None:
            points = list(range(self.npoints))
        pos = {x: i for i, x in enumerate(points)}
        action = []
        for local_g in range(subgroup.order):
            g = embed[local_g]
            row = []
            for x in points:
                y = self.action[g][x]
                if y not in pos:
                    raise InputError("point subset is not stable under the subgroup")
                row.append(pos[y])
            action.append(row)
        return FiniteGSet(subgroup, action, name=name or f"{self.name}|res", check=False)

    def __repr__(self):
        return f"FiniteGSet({self.name}, |X|={self.npoints} over {self.group.name})"


# ---------------------------------------------------------------------------
# core operations
# ---------------------------------------------------------------------------


def conjugacy_classes(G: FiniteGroup):
    """Partition into conjugacy classes, ordered by minimal member index."""
    if "classes" in G._cache:
        return G._cache["classes"]
    seen = [False] * G.order
    classes = []
    for g in range(G.order):
        if seen[g]:
            continue
        members = sorted({G.conjugate(h, g) for h in range(G.order)})
        for m in members:
            seen[m] = True
        classes.append(
            ConjugacyClass(
                representative=members[0],
                members=tuple(members),
                element_order=G.element_order(members[0]),
            )
        )
    classes.sort(key=lambda c: c.representative)
    if sum(c.size for c in classes) != G.order:
        raise InconsistentInvariants("class equation fails")
    G._cache["classes"] = classes
    return classes


def class_map(G: FiniteGroup):
    """element index -> class index."""
    if "class_map" not in G._cache:
        classes = conjugacy_classes(G)
        cm = [0] * G.order
        for i, c in enumerate(classes):
            for m in c.members:
                cm[m] = i
        G._cache["class_map"] = cm
    return G._cache["class_map"]


def class_ids(G: FiniteGroup):
    """ATLAS-style class labels 1a, 2a, 2b, ... in canonical class order."""
    classes = conjugacy_classes(G)
    counts: dict = {}
    ids = []
    for c in classes:
        k = counts.get(c.element_order, 0)
        counts[c.element_order] = k + 1
        ids.append(f"{c.element_order}{chr(ord('a') + k)}")
    return ids


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    members = tuple(sorted(h for h in range(G.order) if G.mul(h, g) == G.mul(g, h)))
    return Subgroup(G, members)


def p_decomposition(G: FiniteGroup, g: int, p: int):
    """g = g_p * g_p' with commuting factors of p-power and prime-to-p order."""
    n = G.element_order(g)
    a = 0
    m = n
    while m % p == 0:
        m //= p
        a += 1
    pa = n // m
    if a == 0:
        return 0, g
    if m == 1:
        return g, 0
    alpha = pow(m, -1, pa)
    beta = pow(pa, -1, m)
    g_p = G.power(g, m * alpha)
    g_pp = G.power(g, pa * beta)
    if G.mul(g_p, g_pp) != g or G.mul(g_pp, g_p) != g:
        raise InconsistentInvariants("p-decomposition round trip failed")
    return g_p, g_pp


def closure(G: FiniteGroup, generators) -> tuple:
    """Sorted tuple of elements of the subgroup generated by `generators`."""
    elems = {0}
    frontier = [0]
    gens = sorted(set(generators))
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                for x in (G.mul(h, g), G.mul(g, h)):
                    if x not in elems:
                        elems.add(x)
                        new.append(x)
        frontier = new
    return tuple(sorted(elems))


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, found by deterministic greedy closure of p-elements."""
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    members = (0,)
    while len(members) < target:
        extended = False
        current = set(members)
        for g in range(1, G.order):
            if g in current or not _is_p_power(G.element_order(g), p):
                continue
            cand = closure(G, list(members) + [g])
            if _is_p_power(len(cand), p) and len(cand) <= target:
                members = cand
                extended = True
                break
        if not extended:
            raise InconsistentInvariants("Sylow search stalled")
    return Subgroup(G, members)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def commuting_pair_classes(G: FiniteGroup, p: int):
    """Orbits of {(g, u): gu = ug, ord(u) a p-power} under simultaneous conjugation.

    Returns a list of dicts with keys 'g', 'u' (representatives, minimal lex pair)
    and 'members' (frozenset of pairs).  Ordered by representative pair.
    """
    orders = G.element_orders
    pairs = set()
    for u in range(G.order):
        if not _is_p_power(orders[u], p):
            continue
        for g in range(G.order):
            if G.mul(g, u) == G.mul(u, g):
                pairs.add((g, u))
    seen = set()
    out = []
    for pair in sorted(pairs):
        if pair in seen:
            continue
        g, u = pair
        orbit = {(G.conjugate(h, g), G.conjugate(h, u)) for h in range(G.order)}
        seen |= orbit
        rep = min(orbit)
        out.append({"g": rep[0], "u": rep[1], "members": frozenset(orbit)})
    out.sort(key=lambda d: (d["g"], d["u"]))
    return out


def double_cosets(G: FiniteGroup, K: Subgroup, H: Subgroup):
    """Representatives (minimal index) of K\\G/H, ordered; partition covers G."""
    seen = [False] * G.order
    reps = []
    total = 0
    for x in range(G.order):
        if seen[x]:
            continue
        coset = {G.mul(G.mul(k, x), h) for k in K.members for h in H.members}
        for y in coset:
            seen[y] = True
        reps.append(x)
        total += len(coset)
    if total != G.order:
        raise InconsistentInvariants("double cosets do not partition the group")
    return reps


def all_subgroups(G: FiniteGroup):
    """All subgroups as sorted member tuples; deterministic order (size, members)."""
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    known = {(0,)}
    frontier = [(0,)]
    while frontier:
        new = []
        for members in frontier:
            mset = set(members)
            for g in range(1, G.order):
                if g in mset:
                    continue
                cand = closure(G, list(members) + [g])
                if cand not in known:
                    known.add(cand)
                    new.append(cand)
        frontier = new
    subs = sorted(known, key=lambda t: (len(t), t))
    G._cache["subgroups"] = subs
    return subs


def subgroup_conjugacy_classes(G: FiniteGroup):
    """One representative (lex-least member tuple) per conjugacy class of subgroups."""
    if "subgroup_classes" in G._cache:
        return G._cache["subgroup_classes"]
    subs = all_subgroups(G)
    seen = set()
    reps = []
    for members in subs:
        if members in seen:
            continue
        orbit = {
            tuple(sorted(G.conjugate(h, g) for g in members)) for h in range(G.order)
        }
        seen |= orbit
        reps.append(min(orbit))
    reps.sort(key=lambda t: (len(t), t))
    G._cache["subgroup_classes"] = reps
    return reps


# ---------------------------------------------------------------------------
# G-set constructors
# ---------------------------------------------------------------------------


def point_gset(G: FiniteGroup) -> FiniteGSet:
    return FiniteGSet(G, [[0] for _ in range(G.order)], name="pt", check=False)


def regular_gset(G: FiniteGroup) -> FiniteGSet:
    return FiniteGSet(G, [list(G.mult[g]) for g in range(G.order)], name="regular", check=False)


def coset_gset(G: FiniteGroup, H: Subgroup, name=None) -> FiniteGSet:
    """Left cosets gH with the left translation action."""
    hset = set(H.members)
    cosets = []
    coset_of = {}
    for g in range(G.order):
        if g in coset_of:
            continue
        coset = frozenset(G.mul(g, h) for h in hset)
        idx = len(cosets)
        cosets.append(coset)
        for y in coset:
            coset_of[y] = idx
    action = [[coset_of[G.mul(g, min(c))] for c in cosets] for g in range(G.order)]
    return FiniteGSet(G, action, name=name or f"G/H{len(H.members)}", check=False)


def conjugation_gset(G: FiniteGroup) -> FiniteGSet:
    action = [[G.conjugate(g, x) for x in range(G.order)] for g in range(G.order)]
    return FiniteGSet(G, action, name="G_conj", check=False)


def disjoint_union(*gsets: FiniteGSet) -> FiniteGSet:
    G = gsets[0].group
    action = []
    for g in range(G.order):
        row = []
        offset = 0
        for X in gsets:
            assert X.group is G
            row.extend(x + offset for x in X.action[g])
            offset += X.npoints
        action.append(row)
    return FiniteGSet(G, action, name="+".join(X.name for X in gsets), check=False)


def product_gset(X: FiniteGSet, Y: FiniteGSet) -> FiniteGSet:
    """X x Y with the diagonal action; point index = x * |Y| + y."""
    G = X.group
    assert Y.group is G
    ny = Y.npoints
    action = []
    for g in range(G.order):
        row = []
        for x in range(X.npoints):
            gx = X.action[g][x]
            for y in range(ny):
                row.append(gx * ny + Y.action[g][y])
        action.append(row)
    return FiniteGSet(G, action, name=f"{X.name}x{Y.name}", check=False)


def all_cosets_gset(G: FiniteGroup) -> FiniteGSet:
    """Disjoint union of G/H over one H per subgroup conjugacy class."""
    pieces = [
        coset_gset(G, Subgroup(G, members), name=f"G/H{len(members)}")
        for members in subgroup_conjugacy_classes(G)
    ]
    X = disjoint_union(*pieces)
    X.name = "all-cosets"
    return X


# ---------------------------------------------------------------------------
# builtin zoo and ingestion
# ---------------------------------------------------------------------------


def _perm_mul(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def group_from_permutations(name: str, degree: int, generators) -> FiniteGroup:
    """Expand a permutation group to a multiplication table.

    Elements are sorted with the identity first, then lexicographically,
    so the table is canonical for a given set of generators.
    """
    idp = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    elems = {idp}
    frontier = [idp]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                x = _perm_mul(h, g)
                if x not in elems:
                    elems.add(x)
                    new.append(x)
        frontier = new
    ordered = [idp] + sorted(e for e in elems if e != idp)
    pos = {e: i for i, e in enumerate(ordered)}
    mult = [[pos[_perm_mul(a, b)] for b in ordered] for a in ordered]
    return FiniteGroup(name, mult)


def parse_cycles(s: str, degree: int):
    """Parse cycle notation like "(1 2 3)(4 5)" (1-based) into a permutation tuple."""
    perm = list(range(degree))
    s = s.replace(",", " ")
    chunks = [c for c in s.replace("(", " ( ").replace(")", " ) ").split() if c]
    i = 0
    while i < len(chunks):
        if chunks[i] != "(":
            raise InputError(f"bad cycle string {s!r}")
        j = i + 1
        cyc = []
        while j < len(chunks) and chunks[j] != ")":
            cyc.append(int(chunks[j]) - 1)
            j += 1
        if j >= len(chunks):
            raise InputError(f"unclosed cycle in {s!r}")
        for k, x in enumerate(cyc):
            if not 0 <= x < degree:
                raise InputError(f"cycle entry {x + 1} out of range in {s!r}")
            perm[x] = cyc[(k + 1) % len(cyc)]
        i = j + 1
    return tuple(perm)


def cyclic_group(n: int) -> FiniteGroup:
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(f"Z{n}", mult)


def direct_product(G: FiniteGroup, H: FiniteGroup, name=None) -> FiniteGroup:
    nh = H.order
    order = G.order * nh

    def mul(a, b):
        ag, ah = divmod(a, nh)
        bg, bh = divmod(b, nh)
        return G.mul(ag, bg) * nh + H.mul(ah, bh)

    mult = [[mul(a, b) for b in range(order)] for a in range(order)]
    return FiniteGroup(name or f"{G.name}x{H.name}", mult)


def quaternion_group() -> FiniteGroup:
    # elements 0..7 = 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    basic = {
        ("1", x): x for x in names
    }
    for x in names:
        basic[(x, "1")] = x

    def neg(x):
        return x[1:] if x.startswith("-") else "-" + x

    rules = {
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
        ("-1", "-1"): "1",
    }

    def mul_names(a, b):
        sign = 1
        if a.startswith("-") and a != "-1":
            sign, a = -sign, a[1:]
        if b.startswith("-") and b != "-1":
            sign, b = -sign, b[1:]
        if a == "1":
            r = b
        elif b == "1":
            r = a
        elif a == "-1" and b == "-1":
            r = "1"
        elif a == "-1":
            r = neg(b)
        elif b == "-1":
            r = neg(a)
        else:
            r = rules[(a, b)]
        if sign < 0:
            r = neg(r)
        if r.startswith("--"):
            r = r[2:]
        return r

    pos = {x: i for i, x in enumerate(names)}
    mult = [[pos[mul_names(a, b)] for b in names] for a in names]
    return FiniteGroup("Q8", mult)


def builtin_group(name: str) -> FiniteGroup:
    """The builtin zoo; accepts a few aliases ("Z/4", "Z4", "V4", ...)."""
    key = name.strip().replace("/", "").replace(" ", "").lower()
    key = key.replace("×", "x")
    if key in ("trivial", "1", "z1"):
        return cyclic_group(1)
    if key.startswith("z") and "x" not in key:
        try:
            n = int(key[1:])
        except ValueError:
            raise InputError(f"unknown group {name!r}")
        if not 1 <= n <= 16:
            raise InputError("builtin cyclic groups are Z/n with n <= 16")
        return cyclic_group(n)
    if key in ("z2xz2", "v4"):
        return direct_product(cyclic_group(2), cyclic_group(2), name="Z2xZ2")
    if key in ("z4xz2",):
        return direct_product(cyclic_group(4), cyclic_group(2), name="Z4xZ2")
    if key == "d4":
        return group_from_permutations("D4", 4, [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)])
    if key == "q8":
        return quaternion_group()
    if key == "s3":
        return group_from_permutations("S3", 3, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])
    if key == "a4":
        return group_from_permutations(
            "A4", 4, [parse_cycles("(1 2 3)", 4), parse_cycles("(1 2)(3 4)", 4)]
        )
    if key == "s4":
        return group_from_permutations(
            "S4", 4, [parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)]
        )
    if key == "a5":
        return group_from_permutations(
            "A5", 5, [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2 3)", 5)]
        )
    raise InputError(f"unknown builtin group {name!r}")


def group_from_json(obj) -> FiniteGroup:
    """Ingest {"name", "order", "mult_table"} or {"name", "degree", "generators"}."""
    if "mult_table" in obj:
        name = obj.get("name", "ingested")
        table = obj["mult_table"]
        if len(table) != obj.get("order", len(table)):
            raise InputError("order does not match mult_table size")
        return FiniteGroup(name, table)
    if "generators" in obj:
        degree = obj["degree"]
        gens = [parse_cycles(s, degree) for s in obj["generators"]]
        return group_from_permutations(obj.get("name", "ingested"), degree, gens)
    raise InputError("group JSON must contain mult_table or generators")


def load_group(spec: str) -> FiniteGroup:
    """Builtin name, or a path to a group JSON file."""
    import os

    if os.path.exists(spec):
        with open(spec) as fh:
            return group_from_json(json.load(fh))
    return builtin_group(spec)


def gset_from_json(G: FiniteGroup, obj) -> FiniteGSet:
    """Ingest {"points": n, "action": {elementIndex: [image per point]}}."""
    n = obj["points"]
    action = [None] * G.order
    for k, images in obj["action"].items():
        action[int(k)] = list(images)
    if any(row is None for row in action):
        raise InputError("action table must cover every group element")
    if any(len(row) != n for row in action):
        raise InputError("each action row must list an image per point")
    return FiniteGSet(G, action, name=obj.get("name", "ingested"))


def builtin_gset(G: FiniteGroup, name: str) -> FiniteGSet:
    key = name.strip().lower()
    if key in ("pt", "point"):
        return point_gset(G)
    if key in ("regular", "free"):
        return regular_gset(G)
    if key in ("all-cosets", "allcosets"):
        return all_cosets_gset(G)
    if key in ("conj", "conjugation"):
        return conjugation_gset(G)
    raise InputError(f"unknown builtin G-set {name!r}")


def load_gset(G: FiniteGroup, spec: str) -> FiniteGSet:
    import os

    if os.path.exists(spec):
        with open(spec) as fh:
            return gset_from_json(G, json.load(fh))
    return builtin_gset(G, spec)
