"""Rational approximation of truncated Laurent series and the arc table.

alpha = b_1 t^-1 + b_2 t^-2 + ... is approximated by h1/h2 through the
Hankel system whose rows are (b_i, b_{i+1}, ..., b_{i+m}).
"""

from __future__ import annotations

import csv
import io
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import PreconditionError, check_budget
from .fields import NEG_INF, FpPoly, poly_divmod, poly_gcd
from .laurent import TruncLaurent


@dataclass(frozen=True)
class RatApprox:
    """alpha = h1/h2 + theta with h2 monic, gcd(h1, h2) = 1, deg h1 < deg h2."""

    h1: FpPoly
    h2: FpPoly
    theta: TruncLaurent

    @property
    def m_prime(self) -> int:
        return self.h2.deg

    def theta_ord(self):
        """ord theta, or the string '<=k' when the window cannot decide it."""
        top = self.theta._top_known()
        if top is not None:
            return top
        if self.theta.exact_below:
            return NEG_INF
        return f"<={self.theta.lo - 1}"

    def reconstruct(self, lo: int) -> TruncLaurent:
        return TruncLaurent.from_rational(self.h1, self.h2, lo) + self.theta


def hankel(b: Sequence[int], rows: int, cols: int) -> list[list[int]]:
    """rows x cols matrix with entry (i, j) = b_{i+j}, i from 1, j from 0."""
    return [[b[i + j - 1] for j in range(cols)] for i in range(1, rows + 1)]


def _finish(alpha: TruncLaurent, h2: FpPoly) -> RatApprox:
    p = alpha.p
    h1 = (alpha * h2).poly_part()
    g = poly_gcd(h1, h2) if not h1.is_zero() else h2.monic()
    if g.deg > 0:
        h1 = poly_divmod(h1, g)[0]
        h2 = poly_divmod(h2, g)[0]
    inv = pow(h2.lead, p - 2, p)
    h1, h2 = h1.scale(inv), h2.scale(inv)
    theta = alpha - TruncLaurent.from_rational(h1, h2, alpha.lo)
    return RatApprox(h1, h2, theta)


def pade(alpha: TruncLaurent, m: int, s: int) -> RatApprox | None:
    """h1/h2 with deg h2 <= m and ord(alpha h2 - h1) < -s, or None.

    Uses b_1 .. b_{m+s}; raises PrecisionError if they are not known.
    """
    if m < 0 or s < 1:
        raise PreconditionError("pade needs m >= 0 and s >= 1")
    b = alpha.b(m + s)
    basis = linalg.nullspace(hankel(b, s, m + 1), alpha.p, m + 1)
    if not basis:
        return None
    # the basis vector of the last free column has the largest top degree
    return _finish(alpha, FpPoly(alpha.p, basis[-1]))


def pade_contract_holds(alpha: TruncLaurent, s: int, ra: RatApprox, m: int) -> bool:
    """Re-verify ord(alpha h2 - h1) < -s, coprimality, monicity and degrees."""
    resid = alpha * ra.h2 - TruncLaurent.from_poly(ra.h1)
    if not resid.ord_lt(-s) or not ra.h2.is_monic() or ra.h2.deg > m:
        return False
    if ra.h1.is_zero():
        return ra.h2.deg == 0
    return ra.h1.deg < ra.h2.deg and poly_gcd(ra.h1, ra.h2).deg == 0


def in_Am(b: Sequence[int], m: int, d: int, e: int, p: int) -> bool:
    """alpha in A_m: the (de+1-m) x (m+1) Hankel matrix of b is rank deficient."""
    w = d * e + 1
    if len(b) != w:
        raise PreconditionError(f"expected {w} coefficients, got {len(b)}")
    if m < 0:
        raise PreconditionError("m must be nonnegative")
    rows = w - m
    if rows <= 0:
        return True
    return linalg.rank(hankel(b, rows, m + 1), p, m + 1) < m + 1


def locate_major(alpha: TruncLaurent, e: int, d: int, m: int, gamma: int):
    """(m', RatApprox) with deg h2 = m' <= m and ord theta <= -de-2+gamma, or None.

    The approximation is unique when it exists, since m + gamma <= e + 1.
    """
    if m + gamma > e + 1:
        raise PreconditionError("locate_major needs m + gamma <= e + 1")
    w = d * e + 1
    b = alpha.b(w)
    p = alpha.p
    for mp in range(m + 1):
        rows = w - gamma - mp
        H = hankel(b, rows, mp + 1)
        sol = linalg.solve([r[:mp] for r in H], [-r[mp] for r in H], p, mp)
        if sol is None:
            continue
        ra = _finish(alpha, FpPoly(p, list(sol) + [1]))
        if ra.h2.deg != mp:
            raise AssertionError("approximation at minimal degree was not in lowest terms")
        if not ra.theta.ord_le(-w - 1 + gamma):
            raise AssertionError("Hankel solution violates the order bound")
        return mp, ra
    return None


def major_candidates(b: Sequence[int], e: int, d: int, m: int, gamma: int, p: int):
    """Exhaustive search over monic h2 of degree <= m and h1 coprime of lower degree."""
    w = d * e + 1
    alpha = TruncLaurent.from_b(p, b)
    found = []
    for mp in range(m + 1):
        for cs in itertools.product(range(p), repeat=mp):
            h2 = FpPoly(p, cs + (1,))
            for hc in itertools.product(range(p), repeat=mp):
                h1 = FpPoly(p, hc)
                if mp and poly_gcd(h1, h2).deg != 0:
                    continue
                theta = alpha - TruncLaurent.from_rational(h1, h2, -w)
                if theta.ord_le(-w - 1 + gamma):
                    found.append((mp, h1, h2))
    return found


@dataclass(frozen=True)
class ArcEntry:
    b: tuple[int, ...]
    kind: str  # "major" or "minor"
    m: int  # m' for major arcs, stratum index m for minor arcs
    approx: RatApprox | None = None

    @property
    def label(self) -> str:
        return f"{'Major' if self.kind == 'major' else 'Minor'}({self.m})"


@dataclass
class ArcTable:
    p: int
    d: int
    e: int
    gamma: int
    delta: int
    entries: list[ArcEntry] = field(default_factory=list)

    @property
    def width(self) -> int:
        return self.d * self.e + 1

    @property
    def m0(self) -> int:
        return -(-self.width // 2)

    def counts(self) -> dict[str, int]:
        c = Counter(x.label for x in self.entries)
        return dict(sorted(c.items()))

    def stratum(self, kind: str, m: int) -> list[ArcEntry]:
        return [x for x in self.entries if x.kind == kind and x.m == m]

    def major_degrees(self) -> list[int]:
        return sorted({x.m for x in self.entries if x.kind == "major"})

    def minor_indices(self) -> list[int]:
        return sorted({x.m for x in self.entries if x.kind == "minor"})

    def is_partition(self) -> bool:
        seen = [x.b for x in self.entries]
        return len(seen) == len(set(seen)) == self.p**self.width

    def dimension_sanity(self) -> dict[str, bool]:
        """#A_m <= C p^{2m} and #(minor stratum m) <= C p^{2(m+1)}, C = de + 2."""
        C = self.width + 1
        out = {}
        for m in range(self.m0 + 1):
            size = sum(1 for x in self.entries if in_Am(x.b, m, self.d, self.e, self.p))
            out[f"A_{m}"] = size <= C * self.p ** (2 * m)
        for m in self.minor_indices():
            out[f"Minor({m})"] = len(self.stratum("minor", m)) <= C * self.p ** (2 * (m + 1))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["alpha_coeffs", "label", "m_prime", "h1", "h2", "theta_ord"])
        for x in self.entries:
            b = " ".join(map(str, x.b))
            if x.approx is None:
                wr.writerow([b, x.label, "", "", "", ""])
            else:
                a = x.approx
                wr.writerow([b, x.label, a.m_prime, " ".join(map(str, a.h1.c)) or "0",
                             " ".join(map(str, a.h2.c)), _fmt_ord(a.theta_ord())])
        return buf.getvalue()


def _fmt_ord(v) -> str:
    if v == NEG_INF:
        return "-inf"
    return str(v)


def stratify_arcs(p: int, d: int, e: int, gamma: int | None = None, delta: int | None = None,
                  budget: int | None = None) -> ArcTable:
    """Label every alpha in F_p^{de+1} as Major(m') or Minor(m)."""
    gamma = -(-(e + 1) // 2) if gamma is None else gamma
    delta = (e + 1) // 2 if delta is None else delta
    if delta + gamma > e + 1:
        raise PreconditionError("need delta + gamma <= e + 1")
    w = d * e + 1
    check_budget(p**w, budget, "arc table")
    table = ArcTable(p, d, e, gamma, delta)
    m0 = table.m0
    for b in itertools.product(range(p), repeat=w):
        alpha = TruncLaurent.from_b(p, b)
        hit = locate_major(alpha, e, d, delta, gamma)
        if hit is not None:
            table.entries.append(ArcEntry(b, "major", hit[0], hit[1]))
            continue
        k = next(k for k in range(m0 + 1) if in_Am(b, k, d, e, p))
        m = k - 1
        if not delta <= m <= m0 - 1:
            raise AssertionError(f"minor arc {b} falls outside the strata range: m={m}")
        table.entries.append(ArcEntry(b, "minor", m))
    return table
