"""The character ring of the p-complete K-theoretic group algebra.

Elements are conjugation-equivariant virtual bundles on G modulo the
Kuhn-trivial ones, stored as functions on conjugacy classes of commuting pairs
(u, g) with u of p-power order: Phi(u, g) = trace(u | stalk at g).  The product
is convolution (pushforward along group multiplication); the evaluation
characters at enriched classes (u, L) are exact ring homomorphisms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chartab import ClassFunction, character_table, inner_product, permutation_character
from .cyclotomic import CycNum
from .errors import InconsistentInvariants, NotAbelian, NotPGroup, NotPIntegral
from .groups import (
    FiniteGroup,
    FiniteGSet,
    centralizer,
    class_map,
    commuting_pair_classes,
    conjugacy_classes,
)
from .padic import ZqContext
from .repring import blocks_of_zqG, brauer_correspondent, default_context, prime_to_p_part


@dataclass(frozen=True)
class EnrichedClass:
    """(u, L): a p-power class representative with an irreducible of its centralizer."""

    u_class: int  # index into the ring's p-power class list
    irr: int  # index into Irr(Z_G(u))


class CharRing:
    def __init__(self, G: FiniteGroup, p: int, ctx: ZqContext):
        self.G = G
        self.p = p
        self.ctx = ctx
        self.pairs = commuting_pair_classes(G, p)
        self.rank = len(self.pairs)
        self.pair_index = {}
        for idx, data in enumerate(self.pairs):
            for gu in data["members"]:
                self.pair_index[gu] = idx

        cmap = class_map(G)
        self.classes = conjugacy_classes(G)
        # centralizer data per conjugacy class of G
        self.cent = []
        for c in self.classes:
            Z = centralizer(G, c.representative)
            sub, embed = Z.as_group()
            self.cent.append(
                {
                    "rep": c.representative,
                    "sub": sub,
                    "embed": embed,
                    "pos": {g: i for i, g in enumerate(embed)},
                    "table": character_table(sub),
                }
            )
        # generators: (class index, irreducible of the centralizer)
        self.generators = []
        for ci in range(len(self.classes)):
            for L in range(self.cent[ci]["table"].nirr):
                self.generators.append((ci, L))
        # exact Phi-vectors of the generators
        self.gen_phi = [self._generator_phi(ci, L) for ci, L in self.generators]
        # p-power classes of G (indices), the allowed u's
        self.p_power_classes = []
        for i, c in enumerate(self.classes):
            n = c.element_order
            while n % p == 0:
                n //= p
            if n == 1:
                self.p_power_classes.append(i)
        # enriched classes (u p-power class, L in Irr(Z_G(u)))
        self.enriched = []
        for pi, ci in enumerate(self.p_power_classes):
            for L in range(self.cent[ci]["table"].nirr):
                self.enriched.append(EnrichedClass(pi, L))
        if len(self.enriched) != self.rank:
            raise InconsistentInvariants("enriched class count differs from commuting-pair count")

    # -- basis bundles ---------------------------------------------------------

    def _generator_phi(self, ci: int, L: int):
        """Phi-vector of the bundle supported on class ci with stalk Irr[L]."""
        G = self.G
        cmap = class_map(G)
        data = self.cent[ci]
        rep = data["rep"]
        out = []
        for pair in self.pairs:
            g, u = pair["g"], pair["u"]
            if cmap[g] != ci:
                out.append(CycNum.from_rational(0))
                continue
            h = self._transporter(g, rep)
            uc = G.conjugate(h, u)
            out.append(data["table"].rows[L].value_at_element(data["pos"][uc]))
        return tuple(out)

    def _transporter(self, g: int, target: int):
        G = self.G
        for h in range(G.order):
            if G.conjugate(h, g) == target:
                return h
        raise InconsistentInvariants("no transporter between conjugate elements")

    def phi_at(self, coeffs, u: int, g: int) -> CycNum:
        """Phi value of an exact element at the commuting pair (u, g)."""
        return coeffs[self.pair_index[(g, u)]]

    def lattice_element(self, int_coeffs):
        """Z-combination of generators as an exact Phi-vector."""
        out = [CycNum.from_rational(0)] * self.rank
        for c, phi in zip(int_coeffs, self.gen_phi):
            if c:
                for i in range(self.rank):
                    out[i] = out[i] + phi[i] * c
        return tuple(out)

    # -- ring structure ----------------------------------------------------------

    def unit(self):
        """Skyscraper at the identity: Phi(u, g) = [g = e]."""
        out = []
        for pair in self.pairs:
            out.append(CycNum.from_rational(1 if pair["g"] == 0 else 0))
        return tuple(out)

    def convolve(self, a, b):
        """Phi_{a*b}(u, g) = sum over x y = g, both commuting with u."""
        G = self.G
        out = []
        for pair in self.pairs:
            g, u = pair["g"], pair["u"]
            total = CycNum.from_rational(0)
            for x in range(G.order):
                if G.mul(x, u) != G.mul(u, x):
                    continue
                y = G.mul(G.inv(x), g)
                if G.mul(y, u) != G.mul(u, y):
                    continue
                va = a[self.pair_index[(x, u)]]
                if va:
                    vb = b[self.pair_index[(y, u)]]
                    if vb:
                        total = total + va * vb
            out.append(total)
        return tuple(out)

    def bundle_convolve_oracle(self, a_int, b_int):
        """Independent stalk-level convolution of two integral bundles.

        Convolves the full conjugation-equivariant stalk characters (class
        functions over full centralizers) along group multiplication, then
        projects to Phi-coordinates.  Used to cross-check `convolve`.
        """
        G = self.G
        cmap = class_map(G)

        def stalk_value(int_coeffs, x: int, u: int) -> CycNum:
            # stalk at the group element x, evaluated at u in Z_G(x)
            ci = cmap[x]
            data = self.cent[ci]
            h = self._transporter(x, data["rep"])
            uc = G.conjugate(h, u)
            total = CycNum.from_rational(0)
            for gen_idx, (cj, L) in enumerate(self.generators):
                c = int_coeffs[gen_idx]
                if c and cj == ci:
                    total = total + data["table"].rows[L].value_at_element(data["pos"][uc]) * c
            return total

        out = []
        for pair in self.pairs:
            g, u = pair["g"], pair["u"]
            total = CycNum.from_rational(0)
            for x in range(G.order):
                if G.mul(x, u) != G.mul(u, x):
                    continue
                y = G.mul(G.inv(x), g)
                if G.mul(y, u) != G.mul(u, y):
                    continue
                total = total + stalk_value(a_int, x, u) * stalk_value(b_int, y, u)
            out.append(total)
        return tuple(out)

    # -- evaluation characters ----------------------------------------------------

    def chi_evaluate(self, enriched: EnrichedClass, coeffs) -> CycNum:
        """chi_(u,L)(E) = (1/dim L) sum_{g in Z(u)} Phi_E(u, g) trace(g | L)."""
        ci = self.p_power_classes[enriched.u_class]
        data = self.cent[ci]
        u = data["rep"]
        table = data["table"]
        L = table.rows[enriched.irr]
        dim = table.degrees[enriched.irr]
        total = CycNum.from_rational(0)
        for local, g in enumerate(data["embed"]):
            phi = self.phi_at(coeffs, u, g)
            if phi:
                total = total + phi * L.value_at_element(local)
        return total * Fraction(1, dim)

    def chi_matrix(self):
        """chi values of all enriched classes on all generators (exact)."""
        if not hasattr(self, "_chi_matrix"):
            self._chi_matrix = [
                [self.chi_evaluate(e, phi) for phi in self.gen_phi] for e in self.enriched
            ]
        return self._chi_matrix

    def reduced_chi_matrix(self):
        """chi values reduced mod the maximal ideal over p (residue field)."""
        out = []
        for row in self.chi_matrix():
            red = []
            for v in row:
                if any(c.denominator % self.p == 0 for c in v.coeffs):
                    raise NotPIntegral("chi value is not p-integral")
                red.append(self.ctx.reduce_cyc_mod_p(v))
            out.append(tuple(red))
        return out

    # -- Galois action and the prime spectrum ---------------------------------------

    def _p_part_exponent(self):
        e = self.G.exponent
        pa = 1
        while e % self.p == 0:
            e //= self.p
            pa *= self.p
        return pa

    def galois_on_enriched(self, enriched: EnrichedClass, t: int) -> EnrichedClass:
        """(u, L) -> (u^t, sigma_t L), renormalized to canonical representatives."""
        G = self.G
        cmap = class_map(G)
        ci = self.p_power_classes[enriched.u_class]
        data = self.cent[ci]
        u = data["rep"]
        ut = G.power(u, t)
        cj = cmap[ut]
        target = self.cent[cj]
        h = self._transporter(ut, target["rep"])
        # values of the transported character on classes of the target centralizer
        vals = []
        for cl in conjugacy_classes(target["sub"]):
            y = target["embed"][cl.representative]
            x = G.conjugate(G.inv(h), y)  # element of Z_G(ut) = Z_G(u)
            val = data["table"].rows[enriched.irr].value_at_element(data["pos"][x])
            vals.append(_galois_p_part(val, t, self.p))
        # identify the target irreducible
        for j in range(target["table"].nirr):
            if list(target["table"].rows[j].values) == vals:
                return EnrichedClass(self.p_power_classes.index(cj), j)
        raise InconsistentInvariants("Galois image is not an irreducible character")

    def minimal_primes(self, modulus_exponent_bump: int = 0):
        """Galois orbits of enriched classes under (Z/p^A)^* acting diagonally."""
        pa = self._p_part_exponent()
        for _ in range(modulus_exponent_bump):
            pa *= self.p
        units = [t for t in range(1, pa) if math.gcd(t, pa) == 1] or [1]
        seen = set()
        orbits = []
        for idx, e in enumerate(self.enriched):
            if idx in seen:
                continue
            orbit = set()
            frontier = [e]
            while frontier:
                cur = frontier.pop()
                ci = self.enriched.index(cur)
                if ci in orbit:
                    continue
                orbit.add(ci)
                for t in units:
                    img = self.galois_on_enriched(cur, t)
                    ii = self.enriched.index(img)
                    if ii not in orbit:
                        frontier.append(img)
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
        orbits.sort()
        return orbits

    def maximal_prime_partition(self):
        """Partition of enriched classes by congruence of chi mod p on all generators."""
        reduced = self.reduced_chi_matrix()
        groups: dict = {}
        for i, row in enumerate(reduced):
            key = tuple(x.coeffs for x in row)
            groups.setdefault(key, []).append(i)
        return sorted(tuple(sorted(v)) for v in groups.values())

    def specialize(self, enriched: EnrichedClass) -> int:
        """The block of Z_q[G] under block-of-L followed by the Brauer map."""
        ci = self.p_power_classes[enriched.u_class]
        data = self.cent[ci]
        u = data["rep"]
        hb = blocks_of_zqG(data["sub"], self.p, self.ctx)
        hblock = hb.block_of_irreducible(enriched.irr)
        return brauer_correspondent(self.G, self.p, self.ctx, u, hblock)

    def specialize_partition(self):
        groups: dict = {}
        for i, e in enumerate(self.enriched):
            b = self.specialize(e)
            groups.setdefault(b, []).append(i)
        return sorted(tuple(sorted(v)) for v in groups.values())

    def lattice_rank(self) -> int:
        """Rank over Q(zeta) of the Phi-matrix of the integral generators."""
        from .intlinalg import gauss_rank

        rows = [list(phi) for phi in self.gen_phi]
        return gauss_rank(rows, inv=lambda x: x.inv())

    def joint_evaluation_rank(self) -> int:
        """Rank of the matrix (chi_e(generator))_{e, generator}: r means reduced."""
        from .intlinalg import gauss_rank

        return gauss_rank([list(r) for r in self.chi_matrix()], inv=lambda x: x.inv())

    def spectrum(self):
        """Minimal primes (Galois orbits), maximal primes, and their incidence."""
        minimal = self.minimal_primes()
        maximal = self.maximal_prime_partition()
        spec_part = self.specialize_partition()
        # each orbit must specialize into a single block
        incidence = []
        for orbit in minimal:
            blocks = {self.specialize(self.enriched[i]) for i in orbit}
            if len(blocks) != 1:
                raise InconsistentInvariants("a minimal prime specializes to several blocks")
            incidence.append((orbit, blocks.pop()))
        return {
            "minimal_primes": minimal,
            "maximal_primes": maximal,
            "specialize_partition": spec_part,
            "incidence": incidence,
            "consistent": spec_part == maximal,
        }

    def support_contains(self, X: FiniteGSet, enriched: EnrichedClass) -> bool:
        """Does (u, L) support the permutation object of X?

        True iff L appears in the permutation module of the u-fixed points as a
        Z_G(u)-set.
        """
        ci = self.p_power_classes[enriched.u_class]
        data = self.cent[ci]
        u = data["rep"]
        fixed = X.fixed_points(u)
        if not fixed:
            return False
        Z = centralizer(self.G, u)
        res = X.restrict_to_subgroup(Z, points=fixed)
        pc = permutation_character(res)
        ip = inner_product(pc, data["table"].rows[enriched.irr])
        val = ip.as_rational()
        assert val.denominator == 1
        return int(val) > 0


def build_char_ring(G: FiniteGroup, p: int, ctx: ZqContext = None) -> CharRing:
    if ctx is None:
        ctx = default_context(G, p)
    return CharRing(G, p, ctx)


def _galois_p_part(v: CycNum, t: int, p: int) -> CycNum:
    """Galois action raising p-power roots of unity to the t-th power, fixing the rest."""
    n = v.n
    pa = 1
    while n % p == 0:
        n //= p
        pa *= p
    if pa == 1:
        return v
    # CRT exponent: s = t mod p^a, s = 1 mod n
    s = _crt(t % pa, pa, 1, n)
    return v.galois(s)


def _crt(a: int, m: int, b: int, n: int) -> int:
    if n == 1:
        return a % m if m > 1 else 0
    g = math.gcd(m, n)
    assert g == 1
    x = (a * n * pow(n, -1, m) + b * m * pow(m, -1, n)) % (m * n)
    return x


def abelian_iso_check(G: FiniteGroup, p: int, ctx: ZqContext = None):
    """Verify Z(K_q[G]) = Z_q[G x G#] for an abelian p-group, structure constants
    compared exactly under the basis map (g, chi) -> group element.

    Returns the number of basis pairs checked.
    """
    if not G.is_abelian:
        raise NotAbelian(G.name)
    if not G.is_p_group(p):
        raise NotPGroup(f"{G.name} is not a {p}-group")
    ring = build_char_ring(G, p, ctx)
    n = len(ring.generators)
    if n != G.order * G.order:
        raise InconsistentInvariants("generator count is not |G x G#|")
    # abelian: classes are singletons, so generator (ci, L) is the pair (g, chi_L)
    table = character_table(G)
    gen_lookup = {}
    for idx, (ci, L) in enumerate(ring.generators):
        g = ring.classes[ci].representative
        gen_lookup[(g, L)] = idx
    checked = 0
    for idx_a, (ca, La) in enumerate(ring.generators):
        a = ring.gen_phi[idx_a]
        ga = ring.classes[ca].representative
        for idx_b, (cb, Lb) in enumerate(ring.generators):
            b = ring.gen_phi[idx_b]
            gb = ring.classes[cb].representative
            prod = ring.convolve(a, b)
            # expected: the basis bundle at (ga*gb, La*Lb)
            gc = G.mul(ga, gb)
            prod_char = table.rows[La] * table.rows[Lb]
            Lc = None
            for j in range(table.nirr):
                if table.rows[j] == prod_char:
                    Lc = j
                    break
            if Lc is None:
                raise InconsistentInvariants("product character is not irreducible")
            expected = ring.gen_phi[gen_lookup[(gc, Lc)]]
            if prod != expected:
                raise InconsistentInvariants("structure constants differ from Zq[G x G#]")
            checked += 1
    return checked
