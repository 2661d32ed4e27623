"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as coefficient vectors over Q in the power basis
1, z, ..., z^(phi(n)-1) of Q[x]/(Phi_n(x)).  Arithmetic between different
conductors promotes both operands to the lcm.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .intlinalg import gauss_solve


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (den monic).  Lists, low degree first."""
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients of Phi_n, low degree first, as a tuple of ints."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(num)


def _reduce_poly(coeffs, n):
    """Reduce a coefficient list (any length) mod Phi_n to length phi(n)."""
    deg = euler_phi(n)
    if len(coeffs) <= deg:
        return list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
    phi = cyclotomic_poly(n)
    work = [Fraction(c) for c in coeffs]
    for j in range(len(work) - 1, deg - 1, -1):
        c = work[j]
        if c:
            work[j] = Fraction(0)
            for i in range(deg):
                if phi[i]:
                    work[j - deg + i] -= c * phi[i]
    return work[:deg]


class CycNum:
    """An element of Q(zeta_n), exact."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        deg = euler_phi(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) < deg:
            cs += [Fraction(0)] * (deg - len(cs))
        elif len(cs) > deg:
            cs = _reduce_poly(cs, n)
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(q, n: int = 1) -> "CycNum":
        return CycNum(n, [Fraction(q)])

    @staticmethod
    def zeta(n: int, power: int = 1) -> "CycNum":
        """zeta_n^power."""
        power %= n
        if n == 1:
            return CycNum(1, [1])
        vec = [Fraction(0)] * (power + 1)
        vec[power] = Fraction(1)
        return CycNum(n, vec)

    # -- promotion ----------------------------------------------------------

    def promote(self, m: int) -> "CycNum":
        """Rewrite in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        assert m % self.n == 0, (self.n, m)
        step = m // self.n
        out = [Fraction(0)] * (euler_phi(self.n) * step)
        for j, c in enumerate(self.coeffs):
            if c:
                idx = j * step
                while idx >= len(out):
                    out.append(Fraction(0))
                out[idx] += c
        return CycNum(m, _reduce_poly(out, m))

    @staticmethod
    def _common(a: "CycNum", b: "CycNum"):
        if a.n == b.n:
            return a, b
        m = math.lcm(a.n, b.n)
        return a.promote(m), b.promote(m)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _as_cyc(other)
        a, b = CycNum._common(self, other)
        return CycNum(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_cyc(other))

    def __rsub__(self, other):
        return _as_cyc(other) - self

    def __mul__(self, other):
        other = _as_cyc(other)
        a, b = CycNum._common(self, other)
        deg = len(a.coeffs)
        out = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] += x * y
        return CycNum(a.n, _reduce_poly(out, a.n))

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse via extended Euclid in Q[x] mod Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_poly(self.n)]
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        # extended gcd(a, phi)
        r0, r1 = a, phi
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while r1 and any(r1):
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s_new = _poly_sub(s0, _poly_mul(q, s1))
            s0, s1 = s1, s_new
        # r0 = gcd (a nonzero constant, since Phi_n is irreducible)
        assert len(r0) == 1 and r0[0] != 0
        c = r0[0]
        inv_coeffs = _reduce_poly([x / c for x in s0], self.n)
        return CycNum(self.n, inv_coeffs)

    def __truediv__(self, other):
        return self * _as_cyc(other).inv()

    def __rtruediv__(self, other):
        return _as_cyc(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Galois action and conjugation --------------------------------------

    def galois(self, t: int) -> "CycNum":
        """sigma_t: zeta_n -> zeta_n^t; t must be coprime to n."""
        if math.gcd(t, self.n) != 1:
            raise ValueError(f"galois exponent {t} not coprime to conductor {self.n}")
        t %= self.n
        out = [Fraction(0)]
        for j, c in enumerate(self.coeffs):
            if c:
                idx = (j * t) % self.n
                vec = _reduce_power(self.n, idx)
                out = _poly_add(out, [c * v for v in vec])
        return CycNum(self.n, _reduce_poly(out, self.n))

    def conj(self) -> "CycNum":
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    # -- predicates / conversions -------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = CycNum._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_rational())
        return hash((self.n, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def denominator_lcm(self) -> int:
        return math.lcm(*[c.denominator for c in self.coeffs]) if self.coeffs else 1

    def descend(self, m: int) -> "CycNum":
        """Rewrite in Q(zeta_m) for m | n; raises ValueError if not in the subfield."""
        if self.n == m:
            return self
        assert self.n % m == 0
        deg_m = euler_phi(m)
        basis = [CycNum.zeta(m, j).promote(self.n) for j in range(deg_m)]
        A = [[basis[j].coeffs[i] for j in range(deg_m)] for i in range(len(self.coeffs))]
        sol = gauss_solve(A, list(self.coeffs), inv=lambda x: Fraction(1) / x)
        if sol is None:
            raise ValueError(f"value not in Q(zeta_{m})")
        return CycNum(m, sol)

    def complex_value(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))

    def sort_key(self):
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    def __repr__(self):
        if self.is_rational():
            return f"CycNum({self.coeffs[0]})"
        return f"CycNum(n={self.n}, {list(self.coeffs)})"

    def to_json(self):
        return {
            "n": self.n,
            "num": [c.numerator for c in self.coeffs],
            "den": [c.denominator for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj) -> "CycNum":
        return CycNum(obj["n"], [Fraction(a, b) for a, b in zip(obj["num"], obj["den"])])


@lru_cache(maxsize=None)
def _reduce_power(n: int, j: int):
    """x^j mod Phi_n as a tuple of Fractions of length phi(n)."""
    vec = [Fraction(0)] * (j + 1)
    vec[j] = Fraction(1)
    return tuple(_reduce_poly(vec, n))


def _as_cyc(x):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    raise TypeError(f"cannot coerce {type(x)} to CycNum")


def _poly_divmod_frac(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and not den[-1]:
        den.pop()
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while num and not num[-1]:
        num.pop()
    return q, num


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else [Fraction(0)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


ZERO = CycNum.from_rational(0)
ONE = CycNum.from_rational(1)
