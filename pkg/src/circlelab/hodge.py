"""Truncated Hodge-Deligne series and the lines-on-hypersurfaces bookkeeping.

An HDSeries lives in Z[u,v][[(uv)^-1]]. Coefficients of total degree at
least ``floor`` are exact; everything below is unknown. ``floor=None`` marks
an exact finite polynomial.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .errors import PreconditionError
from .reports import CheckResult


class HDSeries:
    __slots__ = ("coeffs", "floor")

    def __init__(self, coeffs=None, floor: int | None = None):
        self.floor = floor
        self.coeffs = {}
        for (a, b), c in dict(coeffs or {}).items():
            if c and (floor is None or a + b >= floor):
                self.coeffs[(int(a), int(b))] = int(c)

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> HDSeries:
        return cls({(a, b): c})

    @classmethod
    def uv(cls, k: int = 1) -> HDSeries:
        """HD of L^k."""
        return cls({(k, k): 1})

    @classmethod
    def const(cls, c: int) -> HDSeries:
        return cls({(0, 0): c})

    # bookkeeping
    def top(self):
        """Upper bound for the total degree of every term, known or not."""
        degs = [a + b for a, b in self.coeffs]
        if self.floor is not None:
            degs.append(self.floor - 1)
        return max(degs) if degs else None

    @property
    def cap(self) -> int | None:
        return max((max(a, b) for a, b in self.coeffs), default=None)

    def known(self, a: int, b: int) -> bool:
        return self.floor is None or a + b >= self.floor

    def coeff(self, a: int, b: int) -> int | None:
        """Exact coefficient of u^a v^b, or None in the unknown region."""
        if not self.known(a, b):
            return None
        return self.coeffs.get((a, b), 0)

    def truncate(self, floor: int) -> HDSeries:
        new = floor if self.floor is None else max(floor, self.floor)
        return HDSeries(self.coeffs, new)

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        floors = [f for f in (self.floor, other.floor) if f is not None]
        floor = max(floors) if floors else None
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return HDSeries(out, floor)

    __radd__ = __add__

    def __neg__(self):
        return HDSeries({k: -v for k, v in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        # an unknown term of A (degree < floor_A) meets terms of B of degree <= top B
        bounds = []
        if self.floor is not None and other.top() is not None:
            bounds.append(self.floor + other.top())
        if other.floor is not None and self.top() is not None:
            bounds.append(other.floor + self.top())
        floor = max(bounds) if bounds else None
        if floor is None and (self.floor is not None or other.floor is not None):
            floor = max(f for f in (self.floor, other.floor) if f is not None)
        out: dict = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                if floor is None or a1 + a2 + b1 + b2 >= floor:
                    key = (a1 + a2, b1 + b2)
                    out[key] = out.get(key, 0) + c1 * c2
        return HDSeries(out, floor)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HDSeries) and self.floor == other.floor and self.coeffs == other.coeffs

    def __repr__(self):
        body = " + ".join(f"{c}u^{a}v^{b}" for (a, b), c in sorted(self.coeffs.items(), reverse=True)) or "0"
        return f"HDSeries({body}; floor={self.floor})"

    def to_csv(self) -> str:
        """Rows (p, q, coeff, known) for 0 <= p, q <= cap."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "q", "coeff", "known"])
        cap = self.cap if self.cap is not None else -1
        for a in range(cap, -1, -1):
            for b in range(cap, -1, -1):
                c = self.coeff(a, b)
                w.writerow([a, b, "" if c is None else c, "true" if c is not None else "false"])
        return buf.getvalue()


def _coerce(x) -> HDSeries:
    if isinstance(x, HDSeries):
        return x
    if isinstance(x, int):
        return HDSeries.const(x)
    raise TypeError(f"cannot combine HDSeries with {type(x).__name__}")


def hd_mul(A: HDSeries, B: HDSeries) -> HDSeries:
    return A * B


def _series_times(A: HDSeries, k: int, sign: int, floor: int | None) -> HDSeries:
    """A times sum_j sign^j (uv)^{-kj}, kept down to the floor."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    floors = [f for f in (A.floor, floor) if f is not None]
    if not floors:
        raise PreconditionError("an exact input needs an explicit floor for an infinite quotient")
    res_floor = max(floors)
    out: dict = {}
    for (a, b), c in A.coeffs.items():
        j = 0
        while a + b - 2 * k * j >= res_floor:
            key = (a - k * j, b - k * j)
            out[key] = out.get(key, 0) + c * sign**j
            j += 1
    if not out and A.coeffs:
        raise PreconditionError("retained window is empty")
    return HDSeries(out, res_floor)


def hd_geo_div(A: HDSeries, k: int, floor: int | None = None) -> HDSeries:
    """A / (1 - (uv)^{-k})."""
    return _series_times(A, k, 1, floor)


def hd_div_one_plus(A: HDSeries, k: int = 1, floor: int | None = None) -> HDSeries:
    """A / (1 + (uv)^{-k})."""
    return _series_times(A, k, -1, floor)


# hypersurface data ----------------------------------------------------------

def hd_hypersurface_lefschetz(n: int, floor: int | None = None, middle: dict | None = None) -> HDSeries:
    """HD of a smooth hypersurface in P^{n-1}, exact at total degree > n-2.

    ``middle`` optionally supplies exact Hodge numbers h^{p,q} with
    p + q = n - 2, which moves the floor down to include the middle degree.
    """
    known_from = n - 1
    if middle is not None:
        bad = [k for k in middle if sum(k) != n - 2]
        if bad:
            raise PreconditionError(f"middle Hodge numbers must have p + q = n - 2, got {bad}")
        known_from = n - 2
    floor = known_from if floor is None else floor
    if floor < known_from:
        raise PreconditionError(f"floor {floor} lies in the unknown region (total degree <= {known_from - 1})")
    out = {(m, m): 1 for m in range(n - 1) if 2 * m >= floor}
    if middle is not None and floor <= n - 2:
        for (a, b), h in middle.items():
            out[(a, b)] = out.get((a, b), 0) + (-1) ** (a + b) * h
    return HDSeries(out, floor)


def lines_weight_line(n: int, d: int) -> Fraction:
    """Total degree at or below which the main term may differ from HD(F_1)."""
    return 4 * n - 2 * d - 6 - Fraction(n - 2**d * (d - 1), 2 ** (d - 2))


def _main_term_pipeline(n: int, d: int, shift: int) -> HDSeries:
    """HD of L^shift (L^{-d} X^2 - L^{n-d-2} X) / (1 + L^{-1}) from the hypersurface data."""
    X = hd_hypersurface_lefschetz(n)
    num = HDSeries.uv(shift - d) * X * X - HDSeries.uv(shift + n - d - 2) * X
    return hd_div_one_plus(num, 1)


def f1_main_term(n: int, d: int, floor: int | None = None) -> HDSeries:
    """HD of the lines main term (L^{-d} X^2 - L^{n-d-2} X) / (1 + L^{-1}).

    The default floor is the first degree above the validity line, where the
    series equals HD(F_1). Lower floors down to 3n-2d-5 give the main term
    itself, which no longer determines HD(F_1).
    """
    if d < 3 or n <= 2**d * (d - 1):
        raise PreconditionError(f"need d >= 3 and n > 2^d(d-1), got n={n}, d={d}")
    if floor is None:
        floor = int(lines_weight_line(n, d)) + 1
    series = _main_term_pipeline(n, d, 0)
    if series.floor > floor:
        raise PreconditionError(f"hypersurface data only determine total degree >= {series.floor}")
    return series.truncate(floor)


def f1_closed_form(n: int, d: int, floor: int) -> HDSeries:
    """sum_{m >= 0} (floor(m/2) + 1) (uv)^{2n-d-5-m}, kept at total degree >= floor."""
    top = 2 * n - d - 5
    out = {}
    m = 0
    while 2 * (top - m) >= floor:
        out[(top - m, top - m)] = m // 2 + 1
        m += 1
    return HDSeries(out, floor)


def f1_hodge(n: int, d: int, p: int, q: int) -> int | None:
    """h^{p,q}(F_1) when (p, q) lies above the validity line, else None."""
    if d < 3 or n <= 2**d * (d - 1) or p < 0 or q < 0:
        return None
    if p + q <= lines_weight_line(n, d):
        return None
    if p == q and p <= 2 * n - 5 - d:
        return (2 * n - d - 5 - p) // 2 + 1
    return 0


# symmetric square -------------------------------------------------------------

def _t2_coefficient(factors) -> dict:
    """Coefficient of t^2 in prod (1 - m t)^e over factors (m, e), m a monomial key."""
    c1: dict = {}
    c2: dict = {}
    for (a, b), e in factors:
        lin = -e
        quad = e * (e - 1) // 2
        new2 = dict(c2)
        for (x, y), c in c1.items():
            key = (x + a, y + b)
            new2[key] = new2.get(key, 0) + c * lin
        key = (2 * a, 2 * b)
        new2[key] = new2.get(key, 0) + quad
        c2 = new2
        c1[(a, b)] = c1.get((a, b), 0) + lin
    return c2


def sym2_product(n: int, hodge: dict | None = None) -> HDSeries:
    """HD(Sym^2 X) as the t^2 coefficient of prod (1 - u^p v^q t)^{(-1)^{p+q+1} h^{p,q}}.

    An odd class contributes (1 - m t)^h, so its t-coefficient is its signed
    HD term -h m and its t^2 coefficient the exterior square. Writing the
    sign (-1)^{p+q} inside the factor instead gives the unsigned Hodge
    polynomial of Sym^2 X; on diagonal data the two agree.

    Hodge numbers default to the diagonal ones above the middle degree; the
    unknown middle data can pair with known classes up to degree 2(n-2), so
    the result is exact only from total degree 3n-5 on.
    """
    if hodge is None:
        hodge = {(m, m): 1 for m in range(n - 1) if 2 * m > n - 2}
        floor = 3 * n - 5
    else:
        floor = None
    factors = [((a, b), (-1) ** (a + b + 1) * h) for (a, b), h in sorted(hodge.items()) if h]
    return HDSeries(_t2_coefficient(factors), floor)


def sym2_burillo(n: int, floor: int | None = None) -> HDSeries:
    """sum_{m >= 0} (floor(m/2) + 1) (uv)^{2n-4-m}, kept at total degree >= floor."""
    floor = n - 1 if floor is None else floor
    if floor <= n - 2:
        raise PreconditionError(f"floor must exceed n-2 = {n - 2}")
    top = 2 * n - 4
    out = {}
    m = 0
    while 2 * (top - m) >= floor:
        out[(top - m, top - m)] = m // 2 + 1
        m += 1
    return HDSeries(out, floor)


def _compare(A: HDSeries, B: HDSeries, threshold: int) -> list[tuple]:
    keys = {k for k in A.coeffs.keys() | B.coeffs.keys() if sum(k) >= threshold}
    return sorted(k for k in keys if A.coeff(*k) != B.coeff(*k))


def gs_pen_consistency(n: int, perturb: tuple | None = None) -> CheckResult:
    """HD(main term of L^2 F_1 + (1 + L^{n-2}) X) = HD(Sym^2 X) above total degree 7n/2.

    The left side runs through the hypersurface series of the lines main
    term; the right side is the t^2 coefficient of the Hodge product. Two
    closed forms are compared too. ``perturb`` = ((a, b), delta) shifts one
    coefficient of the left side as a comparator sensitivity control.
    """
    if n < 17:
        raise PreconditionError("the cubic comparison needs n >= 17")
    d = 3
    threshold = (7 * n) // 2 + 1
    X = hd_hypersurface_lefschetz(n)
    lhs = _main_term_pipeline(n, d, 2) + (1 + HDSeries.uv(n - 2)) * X
    if perturb is not None:
        (a, b), delta = perturb
        bumped = dict(lhs.coeffs)
        bumped[(a, b)] = bumped.get((a, b), 0) + delta
        lhs = HDSeries(bumped, lhs.floor)
    rhs = sym2_product(n)
    lowest = max(lhs.floor, rhs.floor)
    if threshold < lowest:
        raise PreconditionError(f"comparison threshold {threshold} below the exact region {lowest}")
    lhs_t, rhs_t = lhs.truncate(threshold), rhs.truncate(threshold)
    mismatches = _compare(lhs_t, rhs_t, threshold)
    closed = sym2_burillo(n, threshold)
    closed_mismatch = _compare(rhs_t, closed, threshold)
    f1 = f1_closed_form(n, d, threshold - 4)
    via_f1 = HDSeries.uv(2) * f1 + (1 + HDSeries.uv(n - 2)) * X
    f1_mismatch = _compare(via_f1.truncate(threshold), rhs_t, threshold)
    line = lines_weight_line(n, d)
    notes = [f"lines validity line {line}", f"cubic comparison line {Fraction(7 * n, 2)}",
             f"compared total degrees {threshold}..{4 * n - 8}"]
    if mismatches:
        notes.append(f"mismatch at {mismatches[:5]}")
    ok = not mismatches and not closed_mismatch and not f1_mismatch
    params = {"n": n, "d": d, "threshold": threshold}
    return CheckResult("gs_pen", params, _diag(lhs_t), _diag(rhs_t), ok, notes)


def _diag(S: HDSeries) -> dict:
    return {f"{a},{b}": c for (a, b), c in sorted(S.coeffs.items(), reverse=True)}


def f1_window_check(n: int, d: int) -> CheckResult:
    """f1_hodge against the main-term series at every (p, q) above the validity line."""
    line = lines_weight_line(n, d)
    floor = int(line) + 1
    series = f1_main_term(n, d, floor)
    top = 2 * n - d - 3
    bad = []
    checked = 0
    for p in range(top + 1):
        for q in range(top + 1):
            if p + q <= line:
                continue
            checked += 1
            if f1_hodge(n, d, p, q) != series.coeff(p, q):
                bad.append((p, q))
    params = {"n": n, "d": d, "floor": floor}
    return CheckResult("f1_window", params, checked - len(bad), checked, not bad,
                       [f"validity line {line}"] + ([f"mismatch at {bad[:5]}"] if bad else []))
