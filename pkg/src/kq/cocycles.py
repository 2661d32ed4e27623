"""2-cocycle calculus on finite abelian groups with values in Q/Z.

Values are exact Fractions in [0, 1); the multiplicative picture C^* is
realized additively.  The standard duality cocycle on G x G^sharp is
E((g, phi), (h, psi)) = phi(h).
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .errors import InconsistentInvariants, InputError

_FULL_TRIPLE_BUDGET = 2_000_000
_SAMPLED_TRIPLES = 20_000


def _mod1(x: Fraction) -> Fraction:
    return x - Fraction(math.floor(x))


class FinAbGroup:
    """Finite abelian group as a product of cyclic factors d_1 | d_2 | ...

    Elements are exponent tuples.  The dual group has the same factor list;
    the pairing is <a, b> = sum a_i b_i / d_i in Q/Z.
    """

    def __init__(self, factors):
        self.factors = tuple(int(d) for d in factors)
        if any(d <= 0 for d in self.factors):
            raise InputError("cyclic factor orders must be positive")
        self.order = math.prod(self.factors) if self.factors else 1
        self.exponent = math.lcm(*self.factors) if self.factors else 1

    def elements(self):
        if not self.factors:
            return [()]
        return [tuple(t) for t in itertools.product(*[range(d) for d in self.factors])]

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def zero(self):
        return tuple(0 for _ in self.factors)

    def generators(self):
        gens = []
        for i in range(len(self.factors)):
            g = [0] * len(self.factors)
            g[i] = 1
            gens.append(tuple(g))
        return gens

    def pairing(self, a, chi) -> Fraction:
        """<a, chi> in Q/Z for chi in the dual group (same factor list)."""
        total = Fraction(0)
        for x, y, d in zip(a, chi, self.factors):
            total += Fraction(x * y, d)
        return _mod1(total)

    def product(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.factors + other.factors)

    def __repr__(self):
        body = "x".join(f"Z/{d}" for d in self.factors) or "trivial"
        return f"FinAbGroup({body})"


def parse_abelian(name: str) -> FinAbGroup:
    """Parse "Z/4", "Z2xZ2", "Z/2 x Z/4", ... into a FinAbGroup."""
    key = name.replace(" ", "").replace("×", "x").lower()
    if key in ("trivial", "1"):
        return FinAbGroup([])
    factors = []
    for part in key.split("x"):
        part = part.replace("z/", "").replace("z", "")
        try:
            factors.append(int(part))
        except ValueError:
            raise InputError(f"cannot parse abelian group {name!r}")
    return FinAbGroup(factors)


class Cocycle2:
    """A function A x A -> Q/Z; 2-cocycle status is checked by is_cocycle."""

    def __init__(self, group: FinAbGroup, func):
        self.group = group
        self._func = func
        self._cache: dict = {}

    def __call__(self, a, b) -> Fraction:
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = _mod1(self._func(a, b))
        return self._cache[key]

    def table(self):
        els = self.group.elements()
        return {(a, b): self(a, b) for a in els for b in els}


def standard_cocycle(G: FinAbGroup) -> Cocycle2:
    """E on (G x G#): E((g, phi), (h, psi)) = phi(h)."""
    n = len(G.factors)
    prod = G.product(G)

    def func(a, b):
        g, phi = a[:n], a[n:]
        h, psi = b[:n], b[n:]
        return G.pairing(h, phi)

    return Cocycle2(prod, func)


def eprime_cocycle(G: FinAbGroup) -> Cocycle2:
    """The tensor-product cocycle on G# x G x G#: ((phi,g,psi),(chi,h,omega)) -> chi(g) + psi(h)."""
    n = len(G.factors)
    prod = FinAbGroup(G.factors * 3)

    def func(a, b):
        phi, g, psi = a[:n], a[n : 2 * n], a[2 * n :]
        chi, h, omega = b[:n], b[n : 2 * n], b[2 * n :]
        return G.pairing(g, chi) + G.pairing(h, psi)

    return Cocycle2(prod, func)


def diagonal_restriction(G: FinAbGroup) -> Cocycle2:
    """eprime_cocycle restricted along (phi, g) -> (phi, g, phi): a cocycle on G# x G."""
    n = len(G.factors)
    ep = eprime_cocycle(G)

    def func(a, b):
        phi, g = a[:n], a[n:]
        chi, h = b[:n], b[n:]
        return ep(phi + g + phi, chi + h + chi)

    return Cocycle2(FinAbGroup(G.factors * 2), func)


def coboundary(group: FinAbGroup, nu) -> Cocycle2:
    """d(nu)(a, b) = nu(b) - nu(ab) + nu(a)."""

    def func(a, b):
        return nu[b] - nu[group.add(a, b)] + nu[a]

    return Cocycle2(group, func)


def is_cocycle(c: Cocycle2, full_budget: int = _FULL_TRIPLE_BUDGET):
    """Exact cocycle identity check; returns (ok, witness_triple_or_None).

    Checks all triples when |A|^3 fits the budget, otherwise a deterministic
    sample of triples (the acceptance-scale groups are always fully checked).
    """
    A = c.group
    els = A.elements()
    n = len(els)
    if n**3 <= full_budget:
        triples = itertools.product(els, repeat=3)
    else:
        rng = random.Random(0)
        triples = (
            (els[rng.randrange(n)], els[rng.randrange(n)], els[rng.randrange(n)])
            for _ in range(_SAMPLED_TRIPLES)
        )
    for a, b, x in triples:
        lhs = c(b, x) - c(A.add(a, b), x) + c(a, A.add(b, x)) - c(a, b)
        if _mod1(lhs) != 0:
            return False, (a, b, x)
    return True, None


def antisymmetrization(c: Cocycle2):
    """beta(a, b) = c(a, b) - c(b, a), certified bi-additive by sampling."""
    A = c.group

    def beta(a, b):
        return _mod1(c(a, b) - c(b, a))

    rng = random.Random(1)
    els = A.elements()
    for _ in range(min(400, len(els) ** 2)):
        a, b, x = (els[rng.randrange(len(els))] for _ in range(3))
        if _mod1(beta(A.add(a, b), x) - beta(a, x) - beta(b, x)) != 0:
            raise InconsistentInvariants("antisymmetrization is not bilinear")
    return beta


def class_order(c: Cocycle2) -> int:
    """Order of [c] in H^2(A; Q/Z) = order of its alternating form."""
    A = c.group
    beta = antisymmetrization(c)
    gens = A.generators()
    order = 1
    for a in gens:
        for b in gens:
            v = beta(a, b)
            order = math.lcm(order, v.denominator)
    return order


def coboundary_witness(c: Cocycle2):
    """A 1-cochain nu with d(nu) = c, or None when [c] != 0.

    Constructive: fix nu on each cyclic generator by closing the telescoping
    recursion, accumulate along canonical words, then verify d(nu) = c on all
    pairs exactly.
    """
    A = c.group
    if class_order(c) != 1:
        return None
    els = A.elements()
    nu = {}
    zero = A.zero()
    nu0 = c(zero, zero)
    nu[zero] = nu0
    k = len(A.factors)
    # per-generator values: close d_i * nu(g_i) = telescoped sum
    gen_vals = []
    for i, d in enumerate(A.factors):
        g = [0] * k
        g[i] = 1
        g = tuple(g)
        # mu((j+1)g) = mu(jg) + mu(g) - c(jg, g); closing at j = d gives
        # d*mu(g) = sum_j c(jg, g) - (d-1)*mu(0) ... derive by unrolling:
        acc = Fraction(0)
        cur = zero
        for j in range(d):
            acc += c(cur, g)
            cur = A.add(cur, g)
        # unrolling mu((j+1)g) = mu(jg) + mu(g) - c(jg, g) around the cycle
        # gives d * mu(g) = acc; pick one root in Q/Z
        acc = _mod1(acc)
        gen_vals.append(Fraction(acc.numerator, acc.denominator * d))
    # accumulate along canonical words using mu(cur + g) = mu(cur) + mu(g) - c(cur, g)
    for a in els:
        if a == zero:
            continue
        val = nu0
        cur = zero
        for i in range(k):
            if a[i] == 0:
                continue
            g = [0] * k
            g[i] = 1
            g = tuple(g)
            for _ in range(a[i]):
                val = val + gen_vals[i] - c(cur, g)
                cur = A.add(cur, g)
        nu[a] = _mod1(val)
    # exact verification
    for a in els:
        for b in els:
            if _mod1(nu[b] - nu[A.add(a, b)] + nu[a] - c(a, b)) != 0:
                raise InconsistentInvariants("constructed witness fails verification")
    return nu
