"""R(G) tensor Z_q: block idempotents, Kuhn ideal, K-groups of Borel constructions,
blocks of Z_q[G], and the Brauer correspondent on blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FinAlgebra, is_local_mod_p
from .chartab import character_table, inner_product, ClassFunction
from .cyclotomic import CycNum
from .errors import CorrespondentUndefined, InconsistentInvariants, NotPIntegral
from .groups import (
    FiniteGroup,
    FiniteGSet,
    Subgroup,
    centralizer,
    class_map,
    conjugacy_classes,
    p_decomposition,
    sylow_subgroup,
)
from .intlinalg import int_kernel_basis, transpose
from .padic import ZqContext, default_q_exponent, zq_context, DEFAULT_PRECISION
from .zqlinalg import (
    zq_column_reduce,
    zq_snf_valuations,
    zq_spans_equal,
)


def prime_to_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def default_context(G: FiniteGroup, p: int, f: int = None, k: int = DEFAULT_PRECISION) -> ZqContext:
    """q = p^f with the conductor condition m | q-1, m = prime-to-p part of exp(G)."""
    m = prime_to_p_part(G.exponent, p)
    fmin = default_q_exponent(p, m)
    if f is None:
        f = fmin
    elif (p**f - 1) % m != 0:
        raise NotPIntegral(f"q = {p}^{f} violates the conductor condition m={m} | q-1")
    return zq_context(p, f, k)


class RepRing:
    """R(G) tensor Z_q in the irreducible basis, with integer structure constants."""

    def __init__(self, G: FiniteGroup, ctx: ZqContext):
        self.group = G
        self.ctx = ctx
        self.table = character_table(G)
        self.nirr = self.table.nirr
        self.tensor = _structure_tensor(G)
        self.trivial_index = 0  # table pins the trivial character first

    def unit(self):
        vec = [self.ctx.zero] * self.nirr
        vec[self.trivial_index] = self.ctx.one
        return tuple(vec)

    def mul(self, x, y):
        out = [self.ctx.zero] * self.nirr
        for a, xa in enumerate(x):
            if xa:
                for b, yb in enumerate(y):
                    if yb:
                        c = xa * yb
                        for cc in range(self.nirr):
                            m = self.tensor[a][b][cc]
                            if m:
                                out[cc] = out[cc] + c * m
        return tuple(out)

    def fin_algebra(self) -> FinAlgebra:
        key = ("repring_alg", self.ctx.p, self.ctx.f, self.ctx.k)
        if key not in self.group._cache:
            z, o = self.ctx.zero, self.ctx.one
            table = []
            for a in range(self.nirr):
                row = []
                for b in range(self.nirr):
                    row.append(
                        tuple(
                            self.ctx.from_int(self.tensor[a][b][c]) for c in range(self.nirr)
                        )
                    )
                table.append(row)
            self.group._cache[key] = FinAlgebra(
                self.ctx, table, self.unit(), check=False, name=f"R({self.group.name})xZq"
            )
        return self.group._cache[key]


def _structure_tensor(G: FiniteGroup):
    """Integer tensor N[a][b][c] with chi_a * chi_b = sum_c N chi_c."""
    if "rep_tensor" in G._cache:
        return G._cache["rep_tensor"]
    t = character_table(G)
    r = t.nirr
    tensor = [[[0] * r for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(a + 1):
            prod = t.rows[a] * t.rows[b]
            for c in range(r):
                ip = inner_product(prod, t.rows[c])
                if not ip.is_rational() or ip.as_rational().denominator != 1:
                    raise InconsistentInvariants("non-integral structure constant")
                val = int(ip.as_rational())
                if val < 0:
                    raise InconsistentInvariants("negative structure constant")
                tensor[a][b][c] = val
                tensor[b][a][c] = val
    G._cache["rep_tensor"] = tensor
    return tensor


def rep_ring(G: FiniteGroup, ctx: ZqContext) -> RepRing:
    key = ("repring", ctx.p, ctx.f, ctx.k)
    if key not in G._cache:
        G._cache[key] = RepRing(G, ctx)
    return G._cache[key]


def p_prime_classes(G: FiniteGroup, p: int):
    """Indices of conjugacy classes of order prime to p, in canonical order."""
    return [i for i, c in enumerate(conjugacy_classes(G)) if c.element_order % p != 0]


def p_power_classes(G: FiniteGroup, p: int):
    out = []
    for i, c in enumerate(conjugacy_classes(G)):
        n = c.element_order
        while n % p == 0:
            n //= p
        if n == 1:
            out.append(i)
    return out


def s_pprime_of_class(G: FiniteGroup, p: int, class_index: int):
    """All g in G whose prime-to-p part lies in the given class."""
    cmap = class_map(G)
    out = []
    for g in range(G.order):
        _, gpp = p_decomposition(G, g, p)
        if cmap[gpp] == class_index:
            out.append(g)
    return out


def bonnafe_idempotent(G: FiniteGroup, p: int, ctx: ZqContext, class_index: int):
    """The primitive idempotent of R(G) tensor Z_q attached to a p'-class.

    Coefficient of the irreducible L is (1/|G|) * sum over g' with prime-to-p
    part in C of trace(g'^-1 | L); the sum is Galois-stable so it lives in
    Q(zeta_m) and embeds into Z_q.
    """
    classes = conjugacy_classes(G)
    if classes[class_index].element_order % p == 0:
        raise NotPIntegral("class does not have order prime to p")
    R = rep_ring(G, ctx)
    t = R.table
    e = G.exponent
    m = prime_to_p_part(e, p)
    members = s_pprime_of_class(G, p, class_index)
    cmap = class_map(G)
    coeffs = []
    for row in t.rows:
        total = CycNum.from_rational(0)
        for g in members:
            total = total + row.values[cmap[G.inv(g)]]
        total = total * Fraction(1, G.order)
        desc = total.promote(math.lcm(total.n, m)).descend(m)
        coeffs.append(ctx.embed_cyc(desc))
    vec = tuple(coeffs)
    if R.mul(vec, vec) != vec:
        raise InconsistentInvariants("Bonnafe vector is not idempotent")
    return vec


def block_idempotent_suite(G: FiniteGroup, p: int, ctx: ZqContext):
    """All e_C over p'-classes: orthogonal, complete, primitive idempotents."""
    R = rep_ring(G, ctx)
    pcs = p_prime_classes(G, p)
    idems = [bonnafe_idempotent(G, p, ctx, c) for c in pcs]
    total = tuple([ctx.zero] * R.nirr)
    for i, e in enumerate(idems):
        total = tuple(a + b for a, b in zip(total, e))
        for j, f in enumerate(idems):
            if i != j and any(R.mul(e, f)):
                raise InconsistentInvariants("Bonnafe idempotents not orthogonal")
    if total != R.unit():
        raise InconsistentInvariants("Bonnafe idempotents do not sum to 1")
    A = R.fin_algebra()
    for e in idems:
        corner, _, _ = A.corner(e)
        if not is_local_mod_p(corner):
            raise InconsistentInvariants("Bonnafe idempotent is not primitive")
    return list(zip(pcs, idems))


@dataclass
class KuhnQuotient:
    ideal_basis: list  # integer vectors in the irreducible basis
    quotient_rank: int
    quotient_indices: list  # irreducible indices forming a basis of the quotient
    snf_match: bool
    spans_match: bool


def restriction_matrix(G: FiniteGroup, H: Subgroup):
    """Integer matrix M[i][j]: Res chi_i = sum_j M[i][j] psi_j over Irr(H)."""
    from .chartab import restrict

    t = character_table(G)
    sub, _ = H.as_group()
    tH = character_table(sub)
    M = []
    for row in t.rows:
        res = restrict(row, H)
        out = []
        for psi in tH.rows:
            ip = inner_product(res, psi)
            val = ip.as_rational()
            assert val.denominator == 1
            out.append(int(val))
        M.append(out)
    return M


def kuhn_ideal(G: FiniteGroup, p: int, ctx: ZqContext) -> KuhnQuotient:
    """Kernel of restriction to a Sylow p-subgroup; cross-checked vs (1-e_1) R."""
    P = sylow_subgroup(G, p)
    M = restriction_matrix(G, P)
    kernel = int_kernel_basis(transpose(M))
    R = rep_ring(G, ctx)
    e1 = bonnafe_idempotent(G, p, ctx, 0)  # class index 0 is the identity class
    one_minus = tuple(a - b for a, b in zip(R.unit(), e1))
    image = []
    for i in range(R.nirr):
        basis_vec = [ctx.zero] * R.nirr
        basis_vec[i] = ctx.one
        image.append(list(R.mul(one_minus, tuple(basis_vec))))
    kernel_zq = [[ctx.from_int(x) for x in vec] for vec in kernel]
    spans_match = zq_spans_equal(kernel_zq, image, ctx)
    snf_a = zq_snf_valuations(kernel_zq, ctx) if kernel_zq else []
    snf_b = zq_snf_valuations(image, ctx)
    snf_match = snf_a == snf_b
    rank = R.nirr - len(kernel)
    if rank != len(p_power_classes(G, p)):
        raise InconsistentInvariants("Kuhn quotient rank != number of p-power classes")
    # complement indices: non-pivot coordinates of the ideal span
    if kernel_zq:
        _, pivots = zq_column_reduce(kernel_zq, ctx)
    else:
        pivots = []
    pivset = set(pivots)
    quotient_indices = [i for i in range(R.nirr) if i not in pivset]
    return KuhnQuotient(kernel, rank, quotient_indices, snf_match, spans_match)


def kq0_of_gset(G: FiniteGroup, p: int, ctx: ZqContext, X: FiniteGSet):
    """Per-orbit Kuhn quotients of stabilizers; total rank is their sum."""
    out = []
    total = 0
    for orbit in X.orbits():
        x = orbit[0]
        stab = X.stabilizer(x)
        sub, _ = stab.as_group()
        kq = kuhn_ideal(sub, p, ctx)
        out.append({"orbit_base": x, "stabilizer_order": stab.order, "quotient_rank": kq.quotient_rank})
        total += kq.quotient_rank
    return {"orbits": out, "total_rank": total}


@dataclass
class BlockPartitionZqG:
    blocks: list  # list of sorted tuples of irreducible indices
    reduced_central_characters: list  # per block: tuple of residue-field elements

    @property
    def nblocks(self):
        return len(self.blocks)

    def block_of_irreducible(self, i: int) -> int:
        for b, blk in enumerate(self.blocks):
            if i in blk:
                return b
        raise KeyError(i)


def central_character_values(G: FiniteGroup):
    """omega_chi(C-hat) = |C| chi(g_C) / chi(1) as CycNum, rows x classes."""
    if "omega_table" in G._cache:
        return G._cache["omega_table"]
    t = character_table(G)
    classes = conjugacy_classes(G)
    out = []
    for idx, row in enumerate(t.rows):
        deg = t.degrees[idx]
        vals = [row.values[i] * Fraction(c.size, deg) for i, c in enumerate(classes)]
        out.append(vals)
    G._cache["omega_table"] = out
    return out


def blocks_of_zqG(G: FiniteGroup, p: int, ctx: ZqContext) -> BlockPartitionZqG:
    """Partition Irr(G) by central characters mod the maximal ideal over p."""
    omegas = central_character_values(G)
    reduced = []
    for vals in omegas:
        red = tuple(ctx.reduce_cyc_mod_p(v) for v in vals)
        reduced.append(red)
    groups: dict = {}
    for i, red in enumerate(reduced):
        key = tuple(x.coeffs for x in red)
        groups.setdefault(key, []).append(i)
    blocks = sorted(tuple(sorted(v)) for v in groups.values())
    tables = [reduced[blk[0]] for blk in blocks]
    return BlockPartitionZqG(blocks, tables)


def class_structure_constants(G: FiniteGroup):
    """a[i][j][k] = #{(x,y) in C_i x C_j : x y = z_k}."""
    if "class_tensor" in G._cache:
        return G._cache["class_tensor"]
    classes = conjugacy_classes(G)
    cmap = class_map(G)
    r = len(classes)
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k in range(r):
        zk = classes[k].representative
        for i in range(r):
            for x in classes[i].members:
                j = cmap[G.mul(G.inv(x), zk)]
                a[i][j][k] += 1
    G._cache["class_tensor"] = a
    return a


def brauer_correspondent(G: FiniteGroup, p: int, ctx: ZqContext, u: int, h_block_index: int):
    """Block of G corresponding to a block of Z_G(u) under the Brauer map.

    u must have p-power order.  The induced central character evaluates class
    sums of G on their intersection with Z_G(u); the operation verifies it is
    multiplicative and matches exactly one block of G.
    """
    n = G.element_order(u)
    while n % p == 0:
        n //= p
    if n != 1:
        raise CorrespondentUndefined("u does not have p-power order")
    H = centralizer(G, u)
    sub, embed = H.as_group()
    pos = {g: i for i, g in enumerate(embed)}
    h_blocks = blocks_of_zqG(sub, p, ctx)
    if not 0 <= h_block_index < h_blocks.nblocks:
        raise CorrespondentUndefined("no such block of the centralizer")
    lam_h = h_blocks.reduced_central_characters[h_block_index]
    scmap = class_map(sub)
    res = ctx.residue
    induced = []
    for c in conjugacy_classes(G):
        total = res.zero
        hclasses = set()
        for g in c.members:
            if g in pos:
                hclasses.add(scmap[pos[g]])
        for hc in hclasses:
            total = total + lam_h[hc]
        induced.append(total)
    # verify multiplicativity on class sums mod p
    a = class_structure_constants(G)
    r = len(induced)
    for i in range(r):
        for j in range(r):
            rhs = res.zero
            for k in range(r):
                if a[i][j][k]:
                    rhs = rhs + res.from_int(a[i][j][k]) * induced[k]
            if induced[i] * induced[j] != rhs:
                raise CorrespondentUndefined("induced central character is not multiplicative")
    g_blocks = blocks_of_zqG(G, p, ctx)
    matches = [
        b
        for b in range(g_blocks.nblocks)
        if tuple(x.coeffs for x in g_blocks.reduced_central_characters[b])
        == tuple(x.coeffs for x in induced)
    ]
    if len(matches) != 1:
        raise CorrespondentUndefined(f"induced character matches {len(matches)} blocks")
    return matches[0]
