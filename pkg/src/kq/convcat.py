"""The convolution category of equivariant virtual bundles on finite G-sets.

Morphisms X -> Y are virtual G-equivariant bundles on Y x X stored by stalk
characters (coefficient vectors over the irreducibles of orbit stabilizers);
composition is convolution over the middle G-set.  The module also houses the
fixed-point trace functors, the component-collapsing equivalence onto the
principal component of a centralizer, and Krull-Schmidt decomposition of
objects into labeled indecomposables, on both the K-theoretic and classical
sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FinAlgebra, decompose_identity
from .chartab import character_table, inner_product, ClassFunction
from .cyclotomic import CycNum
from .errors import InconsistentInvariants, NotPIntegral
from .groups import (
    FiniteGroup,
    FiniteGSet,
    Subgroup,
    centralizer,
    class_map,
    conjugacy_classes,
    product_gset,
)
from .padic import ZqContext
from .repring import bonnafe_idempotent, default_context, p_prime_classes, prime_to_p_part
from .zqlinalg import zq_column_reduce, zq_coordinates, zq_det_is_unit


class GOrbitSpace:
    """Orbit/stabilizer bookkeeping for K_G(W): the basis is (orbit, irreducible)."""

    def __init__(self, X: FiniteGSet):
        self.gset = X
        self.G = X.group
        self.orbits = X.orbits()
        self.point_orbit = {}
        self.trans_to_base = {}
        self.stabs = []
        self.subs = []
        self.embeds = []
        self.pos = []
        self.tables = []
        for oi, orbit in enumerate(self.orbits):
            base = orbit[0]
            stab = X.stabilizer(base)
            sub, embed = stab.as_group()
            self.stabs.append(stab)
            self.subs.append(sub)
            self.embeds.append(embed)
            self.pos.append({g: i for i, g in enumerate(embed)})
            self.tables.append(character_table(sub))
            for w in orbit:
                self.point_orbit[w] = oi
                for h in range(self.G.order):
                    if X.apply(h, w) == base:
                        self.trans_to_base[w] = h
                        break
        self.basis = []
        for oi in range(len(self.orbits)):
            for i in range(self.tables[oi].nirr):
                self.basis.append((oi, i))
        self.index = {b: n for n, b in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def stalk_char_value(self, oi: int, irr: int, w: int, s: int) -> CycNum:
        """Value at s in G_w of the stalk character of basis bundle (oi, irr) at w."""
        h = self.trans_to_base[w]
        conj = self.G.mul(self.G.mul(h, s), self.G.inv(h))
        local = self.pos[oi][conj]
        return self.tables[oi].rows[irr].value_at_element(local)

    def zero(self, ring_zero):
        return tuple(ring_zero for _ in self.basis)


def _embed_pprime_value(ctx: ZqContext, v: CycNum):
    """Embed a cyclotomic value with prime-to-p conductor content into Z_q."""
    m = prime_to_p_part(v.n, ctx.p)
    try:
        desc = v.descend(m) if v.n != m else v
    except ValueError:
        raise NotPIntegral("value does not lie in the prime-to-p cyclotomic subfield")
    return ctx.embed_cyc(desc)


@dataclass
class KMor:
    """A morphism X -> Y: coefficients over the pair space on Y x X."""

    cat: "ConvCategory"
    source: FiniteGSet
    target: FiniteGSet
    coeffs: tuple

    def __add__(self, other):
        assert self.source is other.source and self.target is other.target
        return KMor(self.cat, self.source, self.target,
                    tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return KMor(self.cat, self.source, self.target,
                    tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))


class ConvCategory:
    """Convolution category of a fixed group at fixed (p, q, precision)."""

    def __init__(self, G: FiniteGroup, p: int, f: int = None, k: int = None, ctx: ZqContext = None):
        self.G = G
        self.p = p
        if ctx is None:
            from .padic import DEFAULT_PRECISION

            ctx = default_context(G, p, f, k if k is not None else DEFAULT_PRECISION)
        self.ctx = ctx
        self._spaces: dict = {}
        self._pairs: dict = {}
        self._tensors: dict = {}
        self._acts: dict = {}
        self._idems: dict = {}
        self._subcats: dict = {}

    # -- caches ---------------------------------------------------------------

    def space(self, X: FiniteGSet) -> GOrbitSpace:
        key = id(X)
        if key not in self._spaces:
            self._spaces[key] = GOrbitSpace(X)
        return self._spaces[key]

    def pair_space(self, Y: FiniteGSet, X: FiniteGSet):
        """Space of the product Y x X (homs X -> Y live here)."""
        key = (id(Y), id(X))
        if key not in self._pairs:
            prod = product_gset(Y, X)
            self._pairs[key] = (prod, GOrbitSpace(prod))
        return self._pairs[key]

    def pair_point(self, Y, X, y, x):
        return y * X.npoints + x

    def e_idempotent(self, class_index: int):
        if class_index not in self._idems:
            self._idems[class_index] = bonnafe_idempotent(self.G, self.p, self.ctx, class_index)
        return self._idems[class_index]

    def subcategory(self, sub_group: FiniteGroup) -> "ConvCategory":
        key = id(sub_group)
        if key not in self._subcats:
            self._subcats[key] = ConvCategory(sub_group, self.p, ctx=self.ctx)
        return self._subcats[key]

    # -- R(G)-action and component projections ---------------------------------

    def action_tensor(self, space: GOrbitSpace):
        """act[L][(o,i)] -> integer vector over (o,*): tensoring by Irr(G)[L]."""
        key = id(space)
        if key not in self._acts:
            t = character_table(self.G)
            out = []
            for L in range(t.nirr):
                per_basis = {}
                for oi in range(len(space.orbits)):
                    sub = space.subs[oi]
                    embed = space.embeds[oi]
                    tab = space.tables[oi]
                    # restriction of chi_L to the stabilizer, valuewise
                    res_vals = []
                    for cl in conjugacy_classes(sub):
                        parent = embed[cl.representative]
                        res_vals.append(t.rows[L].values[class_map(self.G)[parent]])
                    res = ClassFunction(sub, res_vals)
                    for i in range(tab.nirr):
                        prod = res * tab.rows[i]
                        vec = []
                        for kk in range(tab.nirr):
                            ip = inner_product(prod, tab.rows[kk])
                            val = ip.as_rational()
                            assert val.denominator == 1
                            vec.append(int(val))
                        per_basis[(oi, i)] = vec
                out.append(per_basis)
            self._acts[key] = out
        return self._acts[key]

    def project_component(self, space: GOrbitSpace, class_index: int, coeffs):
        """Apply the block idempotent e_C to a Zq coefficient vector."""
        e = self.e_idempotent(class_index)
        act = self.action_tensor(space)
        out = [self.ctx.zero] * space.dim
        for L, cL in enumerate(e):
            if not cL:
                continue
            per_basis = act[L]
            for n, (oi, i) in enumerate(space.basis):
                c = coeffs[n]
                if c:
                    vec = per_basis[(oi, i)]
                    for kk, mult in enumerate(vec):
                        if mult:
                            m = space.index[(oi, kk)]
                            out[m] = out[m] + cL * c * mult
        return tuple(out)

    # -- convolution ------------------------------------------------------------

    def conv_tensor(self, Z: FiniteGSet, Y: FiniteGSet, X: FiniteGSet):
        """Integer tensor for composing (Y->Z) with (X->Y) into (X->Z)."""
        key = (id(Z), id(Y), id(X))
        if key in self._tensors:
            return self._tensors[key]
        G = self.G
        _, SZY = self.pair_space(Z, Y)
        _, SYX = self.pair_space(Y, X)
        _, SZX = self.pair_space(Z, X)
        T = [[None] * SYX.dim for _ in range(SZY.dim)]
        for a in range(SZY.dim):
            for b in range(SYX.dim):
                T[a][b] = [0] * SZX.dim
        for oi, orbit in enumerate(SZX.orbits):
            base = orbit[0]
            z0, x0 = divmod(base, X.npoints)
            sub = SZX.subs[oi]
            embed = SZX.embeds[oi]
            tab = SZX.tables[oi]
            nloc = sub.order
            # accumulate the value function v[(aF, aE)][s_local]
            buckets: dict = {}
            for s_local in range(nloc):
                s = embed[s_local]
                for y in Y.fixed_points(s):
                    wzy = self.pair_point(Z, Y, z0, y)
                    wyx = self.pair_point(Y, X, y, x0)
                    oF = SZY.point_orbit[wzy]
                    oE = SYX.point_orbit[wyx]
                    for iF in range(SZY.tables[oF].nirr):
                        vF = SZY.stalk_char_value(oF, iF, wzy, s)
                        if not vF:
                            continue
                        for jE in range(SYX.tables[oE].nirr):
                            vE = SYX.stalk_char_value(oE, jE, wyx, s)
                            if not vE:
                                continue
                            keyb = (SZY.index[(oF, iF)], SYX.index[(oE, jE)])
                            if keyb not in buckets:
                                buckets[keyb] = [CycNum.from_rational(0)] * nloc
                            buckets[keyb][s_local] = buckets[keyb][s_local] + vF * vE
            scmap = class_map(sub)
            classes = conjugacy_classes(sub)
            for (a, b), vals in buckets.items():
                # decompose the class function over Irr(sub)
                class_vals = [vals[c.representative] for c in classes]
                for s_local in range(nloc):
                    if vals[s_local] != class_vals[scmap[s_local]]:
                        raise InconsistentInvariants("convolution stalk is not a class function")
                cf = ClassFunction(sub, class_vals)
                for kk in range(tab.nirr):
                    ip = inner_product(cf, tab.rows[kk])
                    val = ip.as_rational()
                    if val.denominator != 1:
                        raise InconsistentInvariants("convolution multiplicities not integral")
                    if val:
                        T[a][b][SZX.index[(oi, kk)]] = int(val)
        self._tensors[key] = T
        return T

    def compose(self, F: KMor, E: KMor) -> KMor:
        """F after E: (X -> Y -> Z) via convolution over Y."""
        assert E.target is F.source
        X, Y, Z = E.source, E.target, F.target
        T = self.conv_tensor(Z, Y, X)
        _, SZX = self.pair_space(Z, X)
        zero = self._ring_zero(F.coeffs, E.coeffs)
        out = [zero] * SZX.dim
        for a, fa in enumerate(F.coeffs):
            if fa:
                row = T[a]
                for b, eb in enumerate(E.coeffs):
                    if eb:
                        c = fa * eb
                        for m, mult in enumerate(row[b]):
                            if mult:
                                out[m] = out[m] + c * mult
        return KMor(self, X, Z, tuple(out))

    def _ring_zero(self, *coeff_lists):
        for cl in coeff_lists:
            for x in cl:
                return x - x
        return self.ctx.zero

    def identity_morphism(self, X: FiniteGSet, ring="zq") -> KMor:
        _, SXX = self.pair_space(X, X)
        zero = self.ctx.zero if ring == "zq" else CycNum.from_rational(0)
        one = self.ctx.one if ring == "zq" else CycNum.from_rational(1)
        out = [zero] * SXX.dim
        for oi, orbit in enumerate(SXX.orbits):
            base = orbit[0]
            z0, x0 = divmod(base, X.npoints)
            if z0 == x0:
                # trivial character of the stabilizer (row 0 of its table)
                out[SXX.index[(oi, 0)]] = one
        return KMor(self, X, X, tuple(out))

    # -- traces -----------------------------------------------------------------

    def lusztig_trace(self, g: int, E: KMor):
        """CycNum matrix on Y^g x X^g with entries trace(g | stalk)."""
        X, Y = E.source, E.target
        _, SYX = self.pair_space(Y, X)
        xf = X.fixed_points(g)
        yf = Y.fixed_points(g)
        rows = []
        for y in yf:
            row = []
            for x in xf:
                w = self.pair_point(Y, X, y, x)
                oi = SYX.point_orbit[w]
                total = CycNum.from_rational(0)
                for i in range(SYX.tables[oi].nirr):
                    c = E.coeffs[SYX.index[(oi, i)]]
                    if c:
                        total = total + SYX.stalk_char_value(oi, i, w, g) * c
                row.append(total)
            rows.append(row)
        return rows, yf, xf

    def trace_matrix(self, c: int, E: KMor):
        """Z_q matrix on Y^c x X^c: the fixed-point trace of a p'-element."""
        X, Y = E.source, E.target
        _, SYX = self.pair_space(Y, X)
        xf = X.fixed_points(c)
        yf = Y.fixed_points(c)
        rows = []
        for y in yf:
            row = []
            for x in xf:
                w = self.pair_point(Y, X, y, x)
                oi = SYX.point_orbit[w]
                total = self.ctx.zero
                for i in range(SYX.tables[oi].nirr):
                    cv = E.coeffs[SYX.index[(oi, i)]]
                    if cv:
                        val = SYX.stalk_char_value(oi, i, w, c)
                        if val:
                            total = total + cv * _embed_pprime_value(self.ctx, val)
                row.append(total)
            rows.append(row)
        return rows, yf, xf

    # -- the equivalence onto the principal component of the centralizer ---------

    def _z_side(self, class_index: int):
        c = conjugacy_classes(self.G)[class_index].representative
        Zsub = centralizer(self.G, c)
        Zg, zembed = Zsub.as_group()
        return c, Zsub, Zg, zembed

    def restrict_gset_to_centralizer(self, X: FiniteGSet, class_index: int):
        c, Zsub, Zg, zembed = self._z_side(class_index)
        fixed = X.fixed_points(c)
        key = ("fixres", id(X), class_index)
        if key not in self._pairs:
            res = X.restrict_to_subgroup(Zsub, points=fixed, name=f"{X.name}^c")
            self._pairs[key] = (res, fixed)
        return self._pairs[key]

    def _beta_core(self, class_index, SG, coeffs, zcat, SZ, point_map, zembed, c):
        """Restrict a bundle to fixed points, twist by the central scalars of c,
        and project to the principal component on the centralizer side.

        `point_map` sends Z-side point indices to G-side point indices.
        """
        out = [self.ctx.zero] * SZ.dim
        for oz, orbit in enumerate(SZ.orbits):
            base = orbit[0]
            wg = point_map(base)
            og = SG.point_orbit[wg]
            subz = SZ.subs[oz]
            embz = SZ.embeds[oz]
            tabz = SZ.tables[oz]
            for i in range(SG.tables[og].nirr):
                cv = coeffs[SG.index[(og, i)]]
                if not cv:
                    continue
                vals = []
                for cl in conjugacy_classes(subz):
                    s_global = zembed[embz[cl.representative]]
                    vals.append(SG.stalk_char_value(og, i, wg, s_global))
                cf = ClassFunction(subz, vals)
                for j in range(tabz.nirr):
                    ip = inner_product(cf, tabz.rows[j])
                    val = ip.as_rational()
                    if val.denominator != 1:
                        raise InconsistentInvariants("restriction multiplicities not integral")
                    if val:
                        out[SZ.index[(oz, j)]] = out[SZ.index[(oz, j)]] + cv * int(val)
        # t_c twist: multiply each (oz, j) by psi_j(c)/psi_j(1), a root of unity
        for oz in range(len(SZ.orbits)):
            subz = SZ.subs[oz]
            tabz = SZ.tables[oz]
            embz = SZ.embeds[oz]
            cz_local = None
            for loc in range(subz.order):
                if zembed[embz[loc]] == c:
                    cz_local = loc
                    break
            if cz_local is None:
                raise InconsistentInvariants("c missing from a fixed-point stabilizer")
            for j in range(tabz.nirr):
                idx = SZ.index[(oz, j)]
                if out[idx]:
                    scalar_cyc = tabz.rows[j].value_at_element(cz_local) * Fraction(
                        1, tabz.degrees[j]
                    )
                    out[idx] = out[idx] * _embed_pprime_value(self.ctx, scalar_cyc)
        return zcat.project_component(SZ, 0, tuple(out))

    def beta_morphism(self, class_index: int, E: KMor) -> KMor:
        """B(E): the image morphism over the centralizer on fixed points.

        E must lie in the e_C component.
        """
        c, Zsub, Zg, zembed = self._z_side(class_index)
        zcat = self.subcategory(Zg)
        X, Y = E.source, E.target
        Xc, xfix = self.restrict_gset_to_centralizer(X, class_index)
        Yc, yfix = self.restrict_gset_to_centralizer(Y, class_index)
        _, SYX = self.pair_space(Y, X)
        _, SZ = zcat.pair_space(Yc, Xc)

        def point_map(zpt):
            yz, xz = divmod(zpt, Xc.npoints)
            return self.pair_point(Y, X, yfix[yz], xfix[xz])

        out = self._beta_core(class_index, SYX, E.coeffs, zcat, SZ, point_map, zembed, c)
        return KMor(zcat, Xc, Yc, out)

    def beta_module(self, class_index: int, X: FiniteGSet, coeffs):
        """The module-level map on K_G(X)e_C, landing in the principal component
        of K_{Z}(X^c).  Returns (X^c as a Z-set, coefficient vector)."""
        c, Zsub, Zg, zembed = self._z_side(class_index)
        zcat = self.subcategory(Zg)
        Xc, xfix = self.restrict_gset_to_centralizer(X, class_index)
        SG = self.space(X)
        SZ = zcat.space(Xc)
        out = self._beta_core(class_index, SG, coeffs, zcat, SZ, lambda zpt: xfix[zpt], zembed, c)
        return Xc, out

    def beta_module_matrix(self, class_index: int, X: FiniteGSet):
        """Matrix of beta_X between component bases, plus a unimodularity flag."""
        c, Zsub, Zg, zembed = self._z_side(class_index)
        zcat = self.subcategory(Zg)
        SG = self.space(X)
        dom_images = []
        for n in range(SG.dim):
            vec = [self.ctx.zero] * SG.dim
            vec[n] = self.ctx.one
            dom_images.append(list(self.project_component(SG, class_index, tuple(vec))))
        dom_basis, dom_piv = zq_column_reduce(dom_images, self.ctx)
        Xc, _ = self.restrict_gset_to_centralizer(X, class_index)
        SZ = zcat.space(Xc)
        cod_images = []
        for n in range(SZ.dim):
            vec = [self.ctx.zero] * SZ.dim
            vec[n] = self.ctx.one
            cod_images.append(list(zcat.project_component(SZ, 0, tuple(vec))))
        cod_basis, cod_piv = zq_column_reduce(cod_images, self.ctx)
        cols = []
        for bvec in dom_basis:
            _, img = self.beta_module(class_index, X, tuple(bvec))
            cols.append(zq_coordinates(cod_basis, cod_piv, list(img)))
        if len(dom_basis) != len(cod_basis):
            return cols, len(dom_basis), len(cod_basis), False
        if not cols:
            return cols, 0, 0, True  # the degenerate 0 = 0 case
        M = [[cols[j][i] for j in range(len(cols))] for i in range(len(cod_basis))]
        return cols, len(dom_basis), len(cod_basis), zq_det_is_unit(M, self.ctx)

    # -- endomorphism algebras and decomposition ----------------------------------

    def end_algebra(self, X: FiniteGSet, class_index: int):
        """e_C End(X) as a FinAlgebra, with the component basis in ambient coords."""
        _, SXX = self.pair_space(X, X)
        images = []
        for n in range(SXX.dim):
            vec = [self.ctx.zero] * SXX.dim
            vec[n] = self.ctx.one
            images.append(list(self.project_component(SXX, class_index, tuple(vec))))
        basis, pivots = zq_column_reduce(images, self.ctx)
        T = self.conv_tensor(X, X, X)
        r = len(basis)
        table = []
        for a in range(r):
            row = []
            for b in range(r):
                prod = self._conv_vectors(T, basis[a], basis[b], SXX.dim)
                row.append(tuple(zq_coordinates(basis, pivots, list(prod))))
            table.append(row)
        delta = self.identity_morphism(X).coeffs
        unit_ambient = self.project_component(SXX, class_index, delta)
        unit = tuple(zq_coordinates(basis, pivots, list(unit_ambient)))
        A = FinAlgebra(self.ctx, table, unit, check=False, name=f"End({X.name})e{class_index}")
        return A, basis, pivots

    def _conv_vectors(self, T, a_vec, b_vec, dim):
        out = [self.ctx.zero] * dim
        for a, fa in enumerate(a_vec):
            if fa:
                row = T[a]
                for b, eb in enumerate(b_vec):
                    if eb:
                        c = fa * eb
                        for m, mult in enumerate(row[b]):
                            if mult:
                                out[m] = out[m] + c * mult
        return tuple(out)

    def decompose_object(self, X: FiniteGSet, class_index: int, seed: int = 0):
        """Primitive summands of (X, e_C) with classical labels via the trace."""
        A, basis, pivots = self.end_algebra(X, class_index)
        if A.rank == 0:
            return []
        dec = decompose_identity(A, seed=seed)
        c, Zsub, Zg, zembed = self._z_side(class_index)
        out = []
        for s in dec.summands:
            ambient = self._corner_vec_to_ambient(s.vector, basis)
            mor = KMor(self, X, X, ambient)
            bmor = self.beta_morphism(class_index, mor)
            zcat = self.subcategory(Zg)
            eps, pts_rows, pts_cols = zcat.trace_matrix(0, bmor)
            if pts_rows != pts_cols:
                raise InconsistentInvariants("trace matrix is not square on fixed points")
            if not _matrix_is_idempotent(eps, self.ctx):
                raise InconsistentInvariants("transported idempotent matrix is not idempotent")
            Xc, _ = self.restrict_gset_to_centralizer(X, class_index)
            label = _module_character_label(Zg, Xc, pts_rows, eps, self.ctx)
            out.append(
                {
                    "class_index": class_index,
                    "idempotent": s.vector,
                    "block_ranks": s.block_ranks,
                    "label": label,
                    "classical_matrix": eps,
                }
            )
        return out

    def _corner_vec_to_ambient(self, vec, basis):
        dim = len(basis[0])
        out = [self.ctx.zero] * dim
        for c, bvec in zip(vec, basis):
            if c:
                for i in range(dim):
                    out[i] = out[i] + c * bvec[i]
        return tuple(out)


def _matrix_is_idempotent(M, ctx):
    n = len(M)
    for i in range(n):
        for j in range(n):
            s = ctx.zero
            for t in range(n):
                s = s + M[i][t] * M[t][j]
            if s != M[i][j]:
                return False
    return True


def _module_character_label(H: FiniteGroup, W: FiniteGSet, points, eps, ctx):
    """Character of the summand im(eps) of Zq[W]: chi(h) = tr(P_h o eps)."""
    pos = {w: i for i, w in enumerate(points)}
    values = []
    for cl in conjugacy_classes(H):
        h = cl.representative
        total = ctx.zero
        for i, w in enumerate(points):
            hw = W.apply(H.inv(h), w)
            if hw in pos:
                total = total + eps[pos[hw]][i]
        values.append(tuple(total.coeffs))
    return tuple(values)


# ---------------------------------------------------------------------------
# the classical side: invariant matrices on finite H-sets
# ---------------------------------------------------------------------------


def classical_end_algebra(H: FiniteGroup, W: FiniteGSet, ctx: ZqContext):
    """End of Zq[W] in the category of H-invariant matrices, as a FinAlgebra.

    Basis: H-orbits of W x W (indicator matrices); the product is matrix
    multiplication, with integer structure constants.
    """
    WW = product_gset(W, W)
    orbits = WW.orbits()
    n = W.npoints
    orbit_of = {}
    for oi, orbit in enumerate(orbits):
        for w in orbit:
            orbit_of[w] = oi
    r = len(orbits)
    table = []
    for a in range(r):
        arep = orbits[a][0]
        row = []
        for b in range(r):
            vec = [0] * r
            # product of indicator matrices evaluated at each orbit rep
            for oi in range(r):
                x, z = divmod(orbits[oi][0], n)
                count = 0
                for y in range(n):
                    if orbit_of[x * n + y] == a and orbit_of[y * n + z] == b:
                        count += 1
                vec[oi] = count
            row.append(tuple(ctx.from_int(v) for v in vec))
        table.append(row)
    unit = [ctx.zero] * r
    for oi in range(r):
        x, z = divmod(orbits[oi][0], n)
        if x == z:
            unit[oi] = ctx.one
    A = FinAlgebra(ctx, table, tuple(unit), check=False, name=f"H-End({W.name})")
    return A, orbits, orbit_of


def classical_decompose(H: FiniteGroup, W: FiniteGSet, ctx: ZqContext, seed: int = 0):
    """Labeled indecomposable summands of the permutation module Zq[W]."""
    A, orbits, orbit_of = classical_end_algebra(H, W, ctx)
    if A.rank == 0:
        return []
    dec = decompose_identity(A, seed=seed)
    n = W.npoints
    out = []
    for s in dec.summands:
        eps = [[ctx.zero] * n for _ in range(n)]
        for oi, cval in enumerate(s.vector):
            if cval:
                for w in orbits[oi]:
                    x, z = divmod(w, n)
                    eps[x][z] = cval
        if not _matrix_is_idempotent(eps, ctx):
            raise InconsistentInvariants("classical idempotent matrix is not idempotent")
        label = _module_character_label(H, W, list(range(n)), eps, ctx)
        out.append({"idempotent": s.vector, "block_ranks": s.block_ranks, "label": label})
    return out
