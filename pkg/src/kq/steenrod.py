"""Mod-2 polynomial algebra on degree-1 generators with Steenrod squares.

Polynomials are sets of monomials (coefficients live in F_2); a monomial is an
exponent tuple.  The total square is Sq(x_i) = x_i + x_i^2 extended by
multiplicativity, and Sq^k extracts the degree deg(f) + k part monomial-wise.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .errors import InputError


class F2Poly:
    """Polynomial over F_2 in `nvars` degree-1 variables."""

    __slots__ = ("nvars", "monomials")

    def __init__(self, nvars: int, monomials=()):
        self.nvars = nvars
        self.monomials = frozenset(tuple(m) for m in monomials)

    @staticmethod
    def zero(nvars):
        return F2Poly(nvars)

    @staticmethod
    def variable(nvars, i):
        m = [0] * nvars
        m[i] = 1
        return F2Poly(nvars, [tuple(m)])

    @staticmethod
    def from_monomial(exponents):
        return F2Poly(len(exponents), [tuple(exponents)])

    def __bool__(self):
        return bool(self.monomials)

    def __eq__(self, other):
        return self.nvars == other.nvars and self.monomials == other.monomials

    def __hash__(self):
        return hash((self.nvars, self.monomials))

    def __add__(self, other):
        assert self.nvars == other.nvars
        return F2Poly(self.nvars, self.monomials ^ other.monomials)

    def __mul__(self, other):
        assert self.nvars == other.nvars
        acc = set()
        for a in self.monomials:
            for b in other.monomials:
                m = tuple(x + y for x, y in zip(a, b))
                acc ^= {m}
        return F2Poly(self.nvars, acc)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.monomials}
        return len(degs) <= 1

    def degree(self):
        if not self.monomials:
            return -1
        return max(sum(m) for m in self.monomials)

    def sort_key(self):
        return tuple(sorted(self.monomials, key=_grlex_key, reverse=True))

    def __repr__(self):
        if not self.monomials:
            return "0"
        names = "xyzuvw"
        terms = []
        for m in sorted(self.monomials, key=_grlex_key, reverse=True):
            parts = []
            for i, e in enumerate(m):
                if e == 1:
                    parts.append(names[i])
                elif e > 1:
                    parts.append(f"{names[i]}^{e}")
            terms.append("*".join(parts) if parts else "1")
        return " + ".join(terms)


def _grlex_key(m):
    return (sum(m), m)


@lru_cache(maxsize=None)
def _binom_mod2(n, k):
    return 1 if (k & n) == k else 0  # Lucas


def total_square_monomial(m):
    """Sq(x^m) as a list of monomials (coefficients mod 2 via Lucas)."""
    factors = []
    for e in m:
        # (x + x^2)^e = sum_j C(e, j) x^(e + j)
        factors.append([e + j for j in range(e + 1) if _binom_mod2(e, j)])
    out = set()
    for combo in itertools.product(*factors):
        out ^= {tuple(combo)}
    return out


def sq(k: int, f: F2Poly) -> F2Poly:
    """The k-th Steenrod square, computed monomial-wise from the total square."""
    if k < 0:
        raise InputError("Sq^k needs k >= 0")
    acc = set()
    for m in f.monomials:
        d = sum(m)
        for mm in total_square_monomial(m):
            if sum(mm) == d + k:
                acc ^= {mm}
    return F2Poly(f.nvars, acc)


def sq3_via_adem(f: F2Poly) -> F2Poly:
    """Sq^3 = Sq^1 Sq^2 (Adem); used to cross-validate the total-square route."""
    return sq(1, sq(2, f))


def divides(f: F2Poly, g: F2Poly):
    """(True, quotient) iff g lies in the principal ideal (f); else (False, None).

    Reduction in graded-lex order; a single polynomial is a Groebner basis of
    the ideal it generates.
    """
    if not f:
        raise InputError("division by the zero polynomial")
    lt = max(f.monomials, key=_grlex_key)
    rest = F2Poly(f.nvars, f.monomials - {lt})
    g_cur = g
    quotient = F2Poly.zero(f.nvars)
    while g_cur:
        candidates = [m for m in g_cur.monomials if all(a >= b for a, b in zip(m, lt))]
        if not candidates:
            return False, None
        m = max(candidates, key=_grlex_key)
        q = tuple(a - b for a, b in zip(m, lt))
        qpoly = F2Poly(f.nvars, [q])
        quotient = quotient + qpoly
        g_cur = g_cur + qpoly * f  # char 2: subtract == add
    return True, quotient


def carlsson_check(f: F2Poly):
    """{sq1_zero, sq3, sq3_divisible}; sq1_zero and not sq3_divisible certifies
    a module with no even K-theoretic realization."""
    if not f.is_homogeneous():
        raise InputError("the obstruction test needs a homogeneous class")
    sq1 = sq(1, f)
    sq3 = sq(3, f)
    if sq3 != sq3_via_adem(f):
        raise InputError("internal: Sq^3 mismatch between Adem and total square")
    ok, quotient = divides(f, sq3)
    return {"sq1_zero": not sq1, "sq3": sq3, "sq3_divisible": ok, "quotient": quotient}


def monomials_of_degree(nvars: int, degree: int):
    """All exponent tuples of total degree `degree`, graded-lex sorted."""
    out = []
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        out.append(tuple(exps))
    return sorted(out, key=_grlex_key, reverse=True)


def search_candidates(nvars: int, degree: int):
    """All homogeneous f with Sq^1 f = 0 and f not dividing Sq^3 f.

    Exhaustive over the kernel of Sq^1 in the given degree (the search space
    is the F_2-span of monomials; the bound nvars <= 3, degree <= 6 keeps the
    kernel enumerable).
    """
    if nvars > 3 or degree > 6:
        raise InputError("exhaustive search is bounded to nvars <= 3, degree <= 6")
    mons = monomials_of_degree(nvars, degree)
    idx = {m: i for i, m in enumerate(mons)}
    target_mons = monomials_of_degree(nvars, degree + 1)
    tidx = {m: i for i, m in enumerate(target_mons)}
    # Sq^1 as a matrix over F_2
    cols = []
    for m in mons:
        img = sq(1, F2Poly(nvars, [m]))
        col = 0
        for mm in img.monomials:
            col ^= 1 << tidx[mm]
        cols.append(col)
    # kernel via F_2 bit linear algebra
    basis = _f2_kernel(cols, len(target_mons))
    out = []
    for mask in _span_masks(basis):
        if mask == 0:
            continue
        f = F2Poly(nvars, [mons[i] for i in range(len(mons)) if (mask >> i) & 1])
        res = carlsson_check(f)
        if res["sq1_zero"] and not res["sq3_divisible"]:
            out.append(f)
    out.sort(key=lambda f: f.sort_key())
    return out


def _f2_kernel(cols, nrows):
    """Kernel (as masks over column indices) of a matrix with bitmask columns."""
    n = len(cols)
    pivots = {}
    combos = [1 << i for i in range(n)]
    work = list(cols)
    basis = []
    for i in range(n):
        v, c = work[i], combos[i]
        while v:
            low = v & (-v)
            r = low.bit_length() - 1
            if r in pivots:
                pv, pc = pivots[r]
                v ^= pv
                c ^= pc
            else:
                pivots[r] = (v, c)
                break
        if not v:
            basis.append(c)
    return basis


def _span_masks(basis):
    for bits in range(1 << len(basis)):
        mask = 0
        b = bits
        i = 0
        while b:
            if b & 1:
                mask ^= basis[i]
            b >>= 1
            i += 1
        yield mask


def parse_f2_poly(s: str, nvars: int = 3) -> F2Poly:
    """Parse "+, *, ^" polynomial strings in variables x, y, z with mod-2 coefficients."""
    s = s.replace(" ", "")
    if not s:
        raise InputError("empty polynomial")
    names = {"x": 0, "y": 1, "z": 2}
    total = F2Poly.zero(nvars)
    for term in s.split("+"):
        if not term:
            raise InputError(f"empty term in {s!r}")
        exps = [0] * nvars
        coeff = 1
        for factor in term.split("*"):
            if not factor:
                raise InputError(f"empty factor in {term!r}")
            if factor.isdigit():
                coeff = (coeff * int(factor)) % 2
                continue
            name = factor[0]
            if name not in names or names[name] >= nvars:
                raise InputError(f"unknown variable {name!r}")
            power = 1
            if len(factor) > 1:
                if factor[1] != "^" or not factor[2:].isdigit():
                    raise InputError(f"cannot parse factor {factor!r}")
                power = int(factor[2:])
            exps[names[name]] += power
        if coeff % 2:
            total = total + F2Poly(nvars, [tuple(exps)])
    return total


def carlsson_class(nvars: int = 3) -> F2Poly:
    """x^4 + (x+y+z)xyz."""
    x = F2Poly.variable(nvars, 0)
    y = F2Poly.variable(nvars, 1)
    z = F2Poly.variable(nvars, 2)
    return x * x * x * x + (x + y + z) * x * y * z
