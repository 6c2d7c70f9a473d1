"""Prime fields and univariate polynomials over them.

Polynomials are stored as tuples of coefficients from low to high degree,
with no trailing zeros, so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .errors import PreconditionError

NEG_INF = float("-inf")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """The field F_p for a prime 2 <= p <= 97."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p <= 97 or not is_prime(p):
            raise PreconditionError(f"unsupported field size {p!r}: need a prime in [2, 97]")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a prime field")
        return pow(a, self.p - 2, self.p)

    def elements(self) -> range:
        return range(self.p)

    def is_square(self, a: int) -> bool:
        a %= self.p
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1


def _strip(coeffs: Sequence[int], p: int) -> tuple[int, ...]:
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class FpPoly:
    """Univariate polynomial in t over F_p."""

    __slots__ = ("p", "c")

    def __init__(self, p: int, coeffs: Sequence[int] = ()):
        self.p = p
        self.c = _strip(coeffs, p)

    # constructors
    @classmethod
    def t(cls, p: int) -> FpPoly:
        return cls(p, (0, 1))

    @classmethod
    def const(cls, p: int, a: int) -> FpPoly:
        return cls(p, (a,))

    @classmethod
    def monomial(cls, p: int, k: int, a: int = 1) -> FpPoly:
        return cls(p, (0,) * k + (a,))

    @classmethod
    def linear(cls, p: int, x: int) -> FpPoly:
        """The monic polynomial t - x."""
        return cls(p, (-x, 1))

    # basic data
    @property
    def deg(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def coeff(self, k: int) -> int:
        return self.c[k] if 0 <= k < len(self.c) else 0

    def coeffs(self, length: int) -> tuple[int, ...]:
        """Coefficients padded with zeros to the given length."""
        if len(self.c) > length:
            raise PreconditionError(f"degree {self.deg} does not fit in {length} coefficients")
        return self.c + (0,) * (length - len(self.c))

    def monic(self) -> FpPoly:
        if not self.c:
            raise ZeroDivisionError("zero polynomial has no monic normalisation")
        return self.scale(pow(self.lead, self.p - 2, self.p))

    # arithmetic
    def _coerce(self, other) -> FpPoly:
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise PreconditionError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return FpPoly(self.p, (other,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.c), len(o.c))
        return FpPoly(self.p, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FpPoly(self.p, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.c or not o.c:
            return FpPoly(self.p)
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return FpPoly(self.p, out)

    __rmul__ = __mul__

    def scale(self, a: int) -> FpPoly:
        return FpPoly(self.p, [a * x for x in self.c])

    def __pow__(self, k: int) -> FpPoly:
        if k < 0:
            raise PreconditionError("negative power of a polynomial")
        result = FpPoly(self.p, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def __eq__(self, other):
        if isinstance(other, int):
            other = FpPoly(self.p, (other,))
        return isinstance(other, FpPoly) and other.p == self.p and other.c == self.c

    def __hash__(self):
        return hash((self.p, self.c))

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.c):
            acc = (acc * x + a) % self.p
        return acc

    def derivative(self) -> FpPoly:
        return FpPoly(self.p, [k * self.c[k] for k in range(1, len(self.c))])

    def taylor(self, x: int) -> tuple[int, ...]:
        """Coefficients of self in powers of (t - x), low to high."""
        from math import comb

        out = []
        for k in range(len(self.c)):
            s = 0
            for j in range(k, len(self.c)):
                s += comb(j, k) * pow(x, j - k, self.p) * self.c[j]
            out.append(s % self.p)
        return _strip(out, self.p)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if not a:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                terms.append(mono if a == 1 else f"{a}{mono}")
        return "+".join(terms)


def poly_divmod(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly]:
    """Euclidean division a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p = a.p
    r = list(a.c)
    db = len(b.c) - 1
    inv = pow(b.c[-1], p - 2, p)
    q = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        coef = r[k] * inv % p
        if coef:
            q[k - db] = coef
            for j, bj in enumerate(b.c):
                r[k - db + j] = (r[k - db + j] - coef * bj) % p
    return FpPoly(p, q), FpPoly(p, r[:db] if db > 0 else ())


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly, FpPoly]:
    """Return (g, s, u) with s*a + u*b = g monic."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = FpPoly(p, (1,)), FpPoly(p)
    u0, u1 = FpPoly(p), FpPoly(p, (1,))
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    inv = pow(r0.lead, p - 2, p)
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def poly_inverse_mod(a: FpPoly, m: FpPoly) -> FpPoly:
    g, s, _ = poly_xgcd(a % m, m)
    if g.deg != 0:
        raise PreconditionError(f"{a} is not invertible modulo {m}")
    return s % m


def crt_combine(r1: FpPoly, l1: FpPoly, r2: FpPoly, l2: FpPoly) -> FpPoly:
    """The unique g with deg g < deg(l1 l2), g = r1 mod l1 and g = r2 mod l2."""
    if not (l1.is_monic() and l2.is_monic()):
        raise PreconditionError("CRT moduli must be monic")
    if poly_gcd(l1, l2).deg != 0:
        raise PreconditionError("CRT moduli must be coprime")
    a = (r1 * poly_inverse_mod(l2, l1)) % l1
    b = (r2 * poly_inverse_mod(l1, l2)) % l2
    return l2 * a + l1 * b


def polys_below(p: int, m: int) -> Iterator[FpPoly]:
    """All polynomials of degree < m, in lexicographic order of coefficients."""
    for cs in itertools.product(range(p), repeat=max(m, 0)):
        yield FpPoly(p, cs)


def monic_polys(p: int, m: int) -> Iterator[FpPoly]:
    """All monic polynomials of degree exactly m."""
    for cs in itertools.product(range(p), repeat=m):
        yield FpPoly(p, cs + (1,))


def is_irreducible(f: FpPoly) -> bool:
    if f.deg is NEG_INF or f.deg < 1:
        return False
    for k in range(1, f.deg // 2 + 1):
        for g in monic_polys(f.p, k):
            if (f % g).is_zero():
                return False
    return True


def factor_monic(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Factor a monic polynomial into monic irreducibles by trial division.

    Returns (prime, exponent) pairs sorted by degree then coefficients.
    """
    if not f.is_monic():
        raise PreconditionError("factor_monic expects a monic polynomial")
    out = []
    rest = f
    k = 1
    while rest.deg >= 1 and 2 * k <= rest.deg:
        for g in monic_polys(f.p, k):
            e = 0
            while True:
                q, r = poly_divmod(rest, g)
                if not r.is_zero():
                    break
                rest, e = q, e + 1
            if e:
                out.append((g, e))
        k += 1
    if rest.deg >= 1:
        out.append((rest, 1))
    # merge the leftover with an existing prime, if it repeats one
    merged: dict[FpPoly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: (ge[0].deg, ge[0].c))
