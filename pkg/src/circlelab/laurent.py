"""Truncated Laurent series in t^{-1} over F_p.

A series is known on an exponent window [lo, hi]; everything above hi is zero.
Below lo it is either exactly zero (``exact_below``) or unknown, in which case
any question whose answer depends on the unknown part raises PrecisionError.
``ord`` is the top exponent carrying a nonzero coefficient, so small series
have very negative order.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import PrecisionError, PreconditionError
from .fields import NEG_INF, FpPoly


class TruncLaurent:
    __slots__ = ("p", "lo", "hi", "c", "exact_below")

    def __init__(self, p: int, lo: int, coeffs: Sequence[int], exact_below: bool = True):
        # coeffs[k] is the coefficient of t^(lo + k)
        if not coeffs:
            coeffs = (0,)
        self.p = p
        self.lo = lo
        self.c = tuple(x % p for x in coeffs)
        self.hi = lo + len(self.c) - 1
        self.exact_below = exact_below

    # constructors
    @classmethod
    def zero(cls, p: int) -> TruncLaurent:
        return cls(p, 0, (0,), True)

    @classmethod
    def from_dict(cls, p: int, terms: Mapping[int, int], lo: int | None = None,
                  exact_below: bool = True) -> TruncLaurent:
        keys = [k for k, v in terms.items() if v % p]
        if lo is None:
            lo = min(keys) if keys else 0
        hi = max(keys + [lo])
        return cls(p, lo, [terms.get(k, 0) for k in range(lo, hi + 1)], exact_below)

    @classmethod
    def from_poly(cls, poly: FpPoly) -> TruncLaurent:
        return cls(poly.p, 0, poly.c or (0,), True)

    @classmethod
    def from_b(cls, p: int, b: Sequence[int], exact_below: bool = False) -> TruncLaurent:
        """alpha = b_1 t^-1 + ... + b_R t^-R, known modulo t^(-R-1)."""
        r = len(b)
        if r == 0:
            return cls(p, -1, (0,), exact_below)
        return cls(p, -r, tuple(reversed(tuple(b))), exact_below)

    @classmethod
    def from_rational(cls, num: FpPoly, den: FpPoly, lo: int) -> TruncLaurent:
        """Expansion of num/den at infinity, known down to exponent lo."""
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        return _rational_series(num, den, lo)

    # data access
    def coeff(self, k: int) -> int:
        if k > self.hi:
            return 0
        if k >= self.lo:
            return self.c[k - self.lo]
        if self.exact_below:
            return 0
        raise PrecisionError(f"coefficient of t^{k} lies below the known window [{self.lo}, {self.hi}]")

    def known(self, k: int) -> bool:
        return k >= self.lo or self.exact_below

    def b(self, count: int) -> tuple[int, ...]:
        """(b_1, ..., b_count): coefficients of t^-1 ... t^-count."""
        return tuple(self.coeff(-i) for i in range(1, count + 1))

    def _top_known(self):
        for k in range(self.hi, self.lo - 1, -1):
            if self.c[k - self.lo]:
                return k
        return None

    @property
    def ord(self):
        top = self._top_known()
        if top is not None:
            return top
        if self.exact_below:
            return NEG_INF
        raise PrecisionError(f"ord undetermined: series vanishes on the whole window [{self.lo}, {self.hi}]")

    def ord_le(self, k: int) -> bool:
        """Decide ord(self) <= k."""
        top = self._top_known()
        if top is not None and top > k:
            return False
        if k >= self.lo - 1 or self.exact_below:
            return True
        raise PrecisionError(f"cannot decide ord <= {k} with window [{self.lo}, {self.hi}]")

    def ord_lt(self, k: int) -> bool:
        return self.ord_le(k - 1)

    def is_zero(self) -> bool:
        return self.ord is NEG_INF

    @property
    def res(self) -> int:
        return self.coeff(-1)

    def frac(self) -> TruncLaurent:
        if self.lo > -1:
            if self.exact_below:
                return TruncLaurent.zero(self.p)
            raise PrecisionError("fractional part lies entirely below the known window")
        top = min(self.hi, -1)
        return TruncLaurent(self.p, self.lo, self.c[: top - self.lo + 1], self.exact_below)

    def poly_part(self) -> FpPoly:
        """The polynomial part: exponents >= 0 (always known when lo <= 0)."""
        if self.lo > 0 and not self.exact_below:
            raise PrecisionError("polynomial part not fully known")
        return FpPoly(self.p, [self.coeff(k) for k in range(0, max(self.hi, -1) + 1)])

    def truncate(self, lo: int) -> TruncLaurent:
        """Forget everything below exponent lo."""
        if lo == self.lo:
            return TruncLaurent(self.p, lo, self.c, False)
        if lo < self.lo:
            if self.exact_below:
                return TruncLaurent(self.p, lo, [self.coeff(k) for k in range(lo, self.hi + 1)], False)
            raise PrecisionError("cannot extend the known window downwards")
        if lo > self.hi:
            return TruncLaurent(self.p, lo, (0,), False)
        return TruncLaurent(self.p, lo, self.c[lo - self.lo:], False)

    # arithmetic
    def _check(self, other: TruncLaurent):
        if not isinstance(other, TruncLaurent) or other.p != self.p:
            raise PreconditionError("series over different fields")

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncLaurent(self.p, 0, (other,), True)
        elif isinstance(other, FpPoly):
            other = TruncLaurent.from_poly(other)
        self._check(other)
        bounds = [s.lo for s in (self, other) if not s.exact_below]
        exact = not bounds
        lo = max(bounds) if bounds else min(self.lo, other.lo)
        hi = max(self.hi, other.hi, lo)
        return TruncLaurent(self.p, lo, [self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)], exact)

    __radd__ = __add__

    def __neg__(self):
        return TruncLaurent(self.p, self.lo, [-x for x in self.c], self.exact_below)

    def __sub__(self, other):
        if isinstance(other, (int, FpPoly)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a: int) -> TruncLaurent:
        return TruncLaurent(self.p, self.lo, [a * x for x in self.c], self.exact_below)

    def shift(self, k: int) -> TruncLaurent:
        """Multiply by t^k."""
        return TruncLaurent(self.p, self.lo + k, self.c, self.exact_below)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, FpPoly):
            other = TruncLaurent.from_poly(other)
        self._check(other)
        ta, tb = self._top_known(), other._top_known()
        if (ta is None and self.exact_below) or (tb is None and other.exact_below):
            return TruncLaurent.zero(self.p)
        bounds = []
        if not self.exact_below:
            bounds.append(self.lo + (tb if tb is not None else other.lo - 1))
        if not other.exact_below:
            bounds.append(other.lo + (ta if ta is not None else self.lo - 1))
        exact = not bounds
        full_lo = self.lo + other.lo
        lo = max(bounds) if bounds else full_lo
        hi = self.hi + other.hi
        if lo > hi:
            return TruncLaurent(self.p, lo, (0,), exact)
        out = [0] * (hi - lo + 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            ei = self.lo + i
            jmin = max(0, lo - ei - other.lo)
            for j in range(jmin, len(other.c)):
                bj = other.c[j]
                if bj:
                    out[ei + other.lo + j - lo] += a * bj
        return TruncLaurent(self.p, lo, out, exact)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        if other.p != self.p or other.exact_below != self.exact_below:
            return False
        if self.exact_below:
            lo = min(self.lo, other.lo)
        else:
            if self.lo != other.lo:
                return False
            lo = self.lo
        hi = max(self.hi, other.hi)
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, hi + 1))

    def __hash__(self):
        top = self._top_known()
        return hash((self.p, self.exact_below, top))

    def terms(self) -> dict[int, int]:
        return {self.lo + i: a for i, a in enumerate(self.c) if a}

    def __repr__(self):
        body = " + ".join(f"{a}*t^{k}" for k, a in sorted(self.terms().items(), reverse=True)) or "0"
        tail = "" if self.exact_below else f" + O(t^{self.lo - 1})"
        return f"TruncLaurent({body}{tail})"


def _rational_series(num: FpPoly, den: FpPoly, lo: int) -> TruncLaurent:
    """num/den expanded at infinity, exponents >= lo; inexact below lo."""
    p = num.p
    dd = den.deg
    inv = pow(den.lead, p - 2, p)
    top = num.deg - dd if not num.is_zero() else lo
    top = max(top, lo)
    # write num/den = sum_e a_e t^e.  Work with r(t) = num, subtract a_e t^e den.
    rem: dict[int, int] = {k: v for k, v in enumerate(num.c) if v}
    out = [0] * (top - lo + 1)
    for e in range(top, lo - 1, -1):
        coef = rem.get(e + dd, 0) * inv % p
        if coef:
            out[e - lo] = coef
            for j, dj in enumerate(den.c):
                if dj:
                    pos = e + j
                    rem[pos] = (rem.get(pos, 0) - coef * dj) % p
    return TruncLaurent(p, lo, out, False)


def laurent_parts(alpha: TruncLaurent):
    """(ord, res, frac) of a truncated Laurent series."""
    return alpha.ord, alpha.res, alpha.frac()
