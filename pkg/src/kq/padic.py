"""Truncated unramified p-adic arithmetic: Z_q mod p^k, q = p^f.

A context fixes (p, f, k) plus a monic degree-f modulus h over Z/p^k whose
canonical root is an exact Teichmueller generator: t^(q-1) = 1 mod p^k.
Elements are coefficient tuples of length f over Z/p^k in the basis
1, t, ..., t^(f-1).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycNum
from .errors import DivisibilityError, NotPIntegral, PrecisionExhausted

DEFAULT_PRECISION = 8
MAX_PRECISION = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def _poly_mul_mod(a, b, mod_poly, pk):
    """Product of coefficient tuples modulo (mod_poly, p^k); mod_poly monic."""
    f = len(mod_poly)
    out = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % pk
    for j in range(len(out) - 1, f - 1, -1):
        c = out[j]
        if c:
            out[j] = 0
            for i in range(f):
                out[j - f + i] = (out[j - f + i] - c * mod_poly[i]) % pk
    return tuple(out[:f])


def _least_irreducible(p: int, f: int):
    """Lexicographically least monic irreducible of degree f over F_p with nonzero root.

    "Least" orders candidates by the integer encoding c_0 + c_1 p + ... of the
    non-leading coefficients.  The nonzero-root condition only bites at f = 1,
    where it excludes x so that the Teichmueller lift is a unit.
    """
    for code in range(p**f):
        coeffs = []
        c = code
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        if coeffs[0] == 0:
            continue
        if _is_irreducible_mod_p(coeffs + [1], p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


def _is_irreducible_mod_p(poly, p: int) -> bool:
    """Irreducibility over F_p via x^(p^d) accumulation; poly monic, low-first."""
    f = len(poly) - 1
    if f == 1:
        return True
    mod = tuple(c % p for c in poly[:-1])

    def mulmod(a, b):
        out = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = (out[i + j] + x * y) % p
        for j in range(len(out) - 1, f - 1, -1):
            c = out[j]
            if c:
                out[j] = 0
                for i in range(f):
                    out[j - f + i] = (out[j - f + i] - c * mod[i]) % p
        return tuple(out[:f])

    def powmod(a, e):
        result = (1,) + (0,) * (f - 1)
        while e:
            if e & 1:
                result = mulmod(result, a)
            a = mulmod(a, a)
            e >>= 1
        return result

    x = ((0, 1) + (0,) * (f - 2)) if f >= 2 else (1,)
    # x^(p^f) == x required
    if powmod(x, p**f) != x:
        return False
    # no root in any proper subfield: x^(p^(f/r)) != x for prime r | f
    r = 2
    ftmp = f
    primes = set()
    while r * r <= ftmp:
        if ftmp % r == 0:
            primes.add(r)
            while ftmp % r == 0:
                ftmp //= r
        r += 1
    if ftmp > 1:
        primes.add(ftmp)
    for r in primes:
        if powmod(x, p ** (f // r)) == x:
            return False
    return True


def _charpoly_int(M):
    """Characteristic polynomial of an integer matrix, Berkowitz (division-free).

    Returns coefficients low-first with leading coefficient 1 (degree n).
    """
    n = len(M)
    if n == 0:
        return [1]
    # Berkowitz: iteratively build the char poly via Toeplitz products
    poly = [1]  # char poly of the empty matrix
    for i in range(1, n + 1):
        A = [row[:i] for row in M[:i]]
        a = A[i - 1][i - 1]
        R = A[i - 1][: i - 1]  # row vector
        C = [A[j][i - 1] for j in range(i - 1)]  # column vector
        B = [row[: i - 1] for row in A[: i - 1]]
        # Toeplitz column: [1, -a, -R C, -R B C, -R B^2 C, ...]
        col = [1, -a]
        vec = C[:]
        for _ in range(i - 1):
            col.append(-sum(r * v for r, v in zip(R, vec)))
            vec = [sum(B[r][c] * vec[c] for c in range(i - 1)) for r in range(i - 1)]
        col = col[: i + 1]
        new_poly = [0] * (i + 1)
        for d, pc in enumerate(poly):
            for e, cc in enumerate(col):
                if d + e <= i:
                    new_poly[d + e] += pc * cc
        poly = new_poly
    # poly is in the "descending" convention: poly[j] multiplies lambda^(n-j)
    return list(reversed(poly))


class ZqContext:
    """Arithmetic context for Z_q mod p^k."""

    def __init__(self, p: int, f: int, k: int):
        assert is_prime(p) and f >= 1 and k >= 1
        self.p = p
        self.f = f
        self.k = k
        self.q = p**f
        self.pk = p**k
        h0 = _least_irreducible(p, f)
        self.h = self._lift_modulus(h0)
        self.zero = ZqElem(self, (0,) * f)
        self.one = ZqElem(self, (1,) + (0,) * (f - 1))
        self.gen = ZqElem(self, ((0, 1) + (0,) * (f - 2)) if f >= 2 else (self.pk - self.h[0],))
        assert (self.gen ** (self.q - 1)).coeffs == self.one.coeffs, "Teichmueller modulus broken"

    def _lift_modulus(self, h0):
        """Hensel-lift h0 so that the canonical root is an exact Teichmueller unit.

        Work in R = (Z/p^k)[x]/(naive lift of h0); replace x by its Teichmueller
        representative T = lim x^(q^n), then take the characteristic polynomial of
        multiplication by T.  Its root generates the same ring and satisfies
        t^(q-1) = 1 exactly.
        """
        p, f, k, pk, q = self.p, self.f, self.k, self.pk, self.q
        naive = tuple(h0)
        t = ((0, 1) + (0,) * (f - 2)) if f >= 2 else ((-naive[0]) % pk,)

        def qpow(a):
            result = (1,) + (0,) * (f - 1)
            e = q
            base = a
            while e:
                if e & 1:
                    result = _poly_mul_mod(result, base, naive, pk)
                base = _poly_mul_mod(base, base, naive, pk)
                e >>= 1
            return result

        for _ in range(k + 2):
            t_new = qpow(t)
            if t_new == t:
                break
            t = t_new
        else:
            raise PrecisionExhausted("Teichmueller iteration did not stabilise")
        # multiplication-by-t matrix on the basis 1, x, ..., x^(f-1)
        cols = []
        basis = [(0,) * i + (1,) + (0,) * (f - i - 1) for i in range(f)]
        for b in basis:
            cols.append(_poly_mul_mod(t, b, naive, pk))
        M = [[cols[j][i] for j in range(f)] for i in range(f)]
        chi = _charpoly_int(M)
        return tuple(c % pk for c in chi[:-1])  # monic part implicit

    # -- element constructors -------------------------------------------------

    def from_int(self, a: int) -> "ZqElem":
        return ZqElem(self, (a % self.pk,) + (0,) * (self.f - 1))

    def from_rational(self, x) -> "ZqElem":
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise NotPIntegral(f"denominator of {x} is divisible by p={self.p}")
        num = x.numerator % self.pk
        den_inv = pow(x.denominator % self.pk, -1, self.pk)
        return self.from_int(num * den_inv)

    @property
    def residue(self) -> "ZqContext":
        """The same field data at precision 1 (arithmetic in F_q)."""
        if self.k == 1:
            return self
        return zq_context(self.p, self.f, 1)

    @property
    def fq_star_generator(self) -> "ZqElem":
        """Canonical Teichmueller lift of a fixed generator of F_q^*.

        Deterministic: the first element (in base-p coefficient encoding) whose
        Teichmueller lift has exact multiplicative order q-1.
        """
        if "_fq_gen" in self.__dict__:
            return self._fq_gen
        q1 = self.q - 1
        prime_divs = sorted({d for d in range(2, q1 + 1) if q1 % d == 0 and is_prime(d)})
        for code in range(1, self.q):
            coeffs = []
            c = code
            for _ in range(self.f):
                coeffs.append(c % self.p)
                c //= self.p
            cand = ZqElem(self, tuple(coeffs)).teichmueller()
            if not cand:
                continue
            if all(cand ** (q1 // r) != self.one for r in prime_divs):
                self._fq_gen = cand
                return cand
        raise AssertionError("no generator of F_q^* found")

    def zeta(self, m: int) -> "ZqElem":
        """The canonical primitive m-th root of unity; requires m | q - 1."""
        if m == 1:
            return self.one
        if (self.q - 1) % m != 0:
            raise DivisibilityError(f"m={m} does not divide q-1={self.q - 1}")
        z = self.fq_star_generator ** ((self.q - 1) // m)
        assert z**m == self.one
        return z

    def embed_cyc(self, a: CycNum) -> "ZqElem":
        """Ring homomorphism Q(zeta_m) -> Z_q on p-integral elements, m | q-1."""
        z = self.zeta(a.n)
        result = self.zero
        power = self.one
        for c in a.coeffs:
            if c:
                result = result + power * self.from_rational(c)
            power = power * z
        return result

    def reduce_cyc_mod_p(self, a: CycNum) -> "ZqElem":
        """Reduction Z_(p)[zeta_n] -> F_q killing the p-power part of zeta_n.

        Returns an element of the residue context (k = 1).  The conductor's
        prime-to-p part must divide q - 1.
        """
        n = a.n
        pa = 1
        while n % self.p == 0:
            n //= self.p
            pa *= self.p
        res = self.residue
        if n == 1:
            image = res.one
        else:
            gamma = pow(pa % n, -1, n)
            image = res.zeta(n) ** gamma
        result = res.zero
        power = res.one
        for c in a.coeffs:
            if c:
                result = result + power * res.from_rational(c)
            power = power * image
        return result

    def __repr__(self):
        return f"ZqContext(p={self.p}, f={self.f}, k={self.k})"


@lru_cache(maxsize=None)
def zq_context(p: int, f: int, k: int) -> ZqContext:
    return ZqContext(p, f, k)


def default_q_exponent(p: int, m: int) -> int:
    """Smallest f with m | p^f - 1 (m prime to p)."""
    if m == 1:
        return 1
    if m % p == 0:
        raise DivisibilityError(f"m={m} is not prime to p={p}")
    f = 1
    acc = p % m
    while acc != 1:
        acc = (acc * p) % m
        f += 1
    return f


class ZqElem:
    """An element of Z_q mod p^k, attached to a ZqContext."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ZqContext, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(c % ctx.pk for c in coeffs)
        assert len(self.coeffs) == ctx.f

    def __add__(self, other):
        other = self._coerce(other)
        return ZqElem(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ZqElem(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return ZqElem(
            self.ctx, _poly_mul_mod(self.coeffs, other.coeffs, self.ctx.h, self.ctx.pk)
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, ZqElem):
            if other.ctx is not self.ctx:
                raise ValueError("mixed Zq contexts")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        if isinstance(other, Fraction):
            return self.ctx.from_rational(other)
        raise TypeError(f"cannot coerce {type(other)}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, ZqElem):
            return NotImplemented
        return (
            (self.ctx.p, self.ctx.f, self.ctx.k) == (other.ctx.p, other.ctx.f, other.ctx.k)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.f, self.ctx.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def valuation(self) -> int:
        """min p-adic valuation of the coordinates; k for the zero element."""
        if not self:
            return self.ctx.k
        v = self.ctx.k
        for c in self.coeffs:
            if c:
                w = 0
                while c % self.ctx.p == 0:
                    c //= self.ctx.p
                    w += 1
                v = min(v, w)
        return v

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def inv(self) -> "ZqElem":
        """Inverse of a unit: invert mod p, then Hensel (Newton) to precision k."""
        if not self.is_unit():
            raise ZeroDivisionError("not a unit in Z_q mod p^k")
        ctx = self.ctx
        # inverse mod p by brute linear algebra on F_q (f is tiny) or Fermat
        b = self ** (ctx.q - 2) if ctx.k == 1 else None
        if b is None:
            res = ctx.residue
            b_res = ZqElem(res, tuple(c % ctx.p for c in self.coeffs)) ** (ctx.q - 2)
            b = ZqElem(ctx, b_res.coeffs)
            for _ in range(ctx.k.bit_length() + 1):
                b = b * (ctx.from_int(2) - self * b)
                if (self * b) == ctx.one:
                    break
            else:
                raise PrecisionExhausted("inverse iteration failed")
        return b

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def teichmueller(self) -> "ZqElem":
        """The Teichmueller representative congruent to self mod p (0 if non-unit)."""
        if not self.is_unit():
            return self.ctx.zero
        t = self
        for _ in range(self.ctx.k + 2):
            t_new = t**self.ctx.q
            if t_new == t:
                return t
            t = t_new
        raise PrecisionExhausted("Teichmueller iteration did not stabilise")

    def reduce_mod_p(self) -> "ZqElem":
        res = self.ctx.residue
        return ZqElem(res, tuple(c % self.ctx.p for c in self.coeffs))

    def lift_to(self, ctx: ZqContext) -> "ZqElem":
        """Interpret the coordinates in a higher-precision context (same p, f).

        This is a section of reduction, not a ring homomorphism per se; used to
        seed Hensel iterations.
        """
        assert ctx.p == self.ctx.p and ctx.f == self.ctx.f
        return ZqElem(ctx, self.coeffs)

    def multiplicative_order(self, bound: int = None) -> int:
        assert self.is_unit()
        bound = bound or self.ctx.q**2
        cur = self
        k = 1
        while cur != self.ctx.one:
            cur = cur * self
            k += 1
            if k > bound:
                raise PrecisionExhausted("order search exceeded bound")
        return k

    def to_json(self):
        return {
            "p": self.ctx.p,
            "f": self.ctx.f,
            "k": self.ctx.k,
            "h": list(self.ctx.h),
            "coeffs": list(self.coeffs),
        }

    @staticmethod
    def from_json(obj) -> "ZqElem":
        ctx = zq_context(obj["p"], obj["f"], obj["k"])
        if list(ctx.h) != list(obj["h"]):
            raise ValueError("modulus mismatch in ZqElem JSON")
        return ZqElem(ctx, obj["coeffs"])

    def __repr__(self):
        if self.ctx.f == 1:
            return f"Zq({self.coeffs[0]} mod {self.ctx.p}^{self.ctx.k})"
        return f"Zq({list(self.coeffs)} mod {self.ctx.p}^{self.ctx.k})"
