"""Lattices over F_p[t] inside K_inf^n, with |x| = 2^deg x (sup over coordinates).

A lattice is the F_p[t]-span of the columns of a nonsingular matrix whose
entries are finite Laurent polynomials in t. Reduction scales by t^c to a
polynomial matrix and brings it to column-reduced form: the leading
coefficient matrix (top-degree coefficient of every column) is nonsingular.
Such a basis has the predictable-degree property, so its sorted column
degrees, shifted back by -c, are the successive minima.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import PreconditionError, check_budget
from .fields import NEG_INF, FpPoly, poly_divmod

Entry = Mapping[int, int]  # exponent -> coefficient, finitely supported


def _clean(p: int, entry: Entry) -> dict[int, int]:
    return {int(k): int(v) % p for k, v in entry.items() if int(v) % p}


def _entry_from_poly(poly: FpPoly, shift: int = 0) -> dict[int, int]:
    return {k + shift: a for k, a in enumerate(poly.c) if a}


def _min_exp(entries) -> int:
    exps = [k for row in entries for e in row for k in e]
    return min(exps) if exps else 0


def bareiss_det(P: Sequence[Sequence[FpPoly]], p: int) -> FpPoly:
    """Determinant of a square polynomial matrix by fraction-free elimination."""
    n = len(P)
    if n == 0:
        return FpPoly(p, (1,))
    A = [list(r) for r in P]
    sign = 1
    prev = FpPoly(p, (1,))
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return FpPoly(p)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                q, r = poly_divmod(num, prev)
                if not r.is_zero():
                    raise AssertionError("Bareiss step was not exact")
                A[i][j] = q
        prev = A[k][k]
    out = A[n - 1][n - 1]
    return out if sign == 1 else -out


def cofactor_matrix(P: Sequence[Sequence[FpPoly]], p: int) -> list[list[FpPoly]]:
    n = len(P)
    if n == 1:
        return [[FpPoly(p, (1,))]]
    C = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[P[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = bareiss_det(minor, p)
            row.append(d if (i + j) % 2 == 0 else -d)
        C.append(row)
    return C


@dataclass(frozen=True)
class ReducedBasis:
    """Column-reduced basis with columns sorted by degree.

    ``basis`` = t^-shift * ``poly_basis``; ``transform`` is unimodular with
    M * transform = basis. ``lead`` is the leading coefficient matrix, and
    ``normalized()`` applies the constant isometry lead^-1 so that the i-th
    basis vector has its dominant entry on the diagonal:
    |x_i| = |x_ii| = 2^sigma_i with every other entry of strictly lower degree.
    """

    p: int
    shift: int
    poly_basis: tuple[tuple[FpPoly, ...], ...]
    transform: tuple[tuple[FpPoly, ...], ...]
    minima: tuple[int, ...]
    lead: tuple[tuple[int, ...], ...]

    def basis(self) -> list[list[dict[int, int]]]:
        return [[_entry_from_poly(x, -self.shift) for x in row] for row in self.poly_basis]

    def normalized(self) -> list[list[dict[int, int]]]:
        n = len(self.lead)
        p = self.p
        inv = _matrix_inverse(self.lead, p)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = FpPoly(p)
                for k in range(n):
                    if inv[i][k]:
                        acc = acc + self.poly_basis[k][j].scale(inv[i][k])
                row.append(_entry_from_poly(acc, -self.shift))
            out.append(row)
        return out


def _matrix_inverse(A, p):
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    R, piv = linalg.rref(aug, p, n)
    if piv != list(range(n)):
        raise PreconditionError("singular constant matrix")
    return [r[n:] for r in R]


class TLattice:
    """Full-rank F_p[t]-lattice spanned by the columns of its basis matrix."""

    def __init__(self, p: int, entries: Sequence[Sequence[Entry]]):
        n = len(entries)
        if n == 0 or any(len(r) != n for r in entries):
            raise PreconditionError("basis matrix must be square and nonempty")
        self.p = p
        self.n = n
        self.entries = tuple(tuple(_clean(p, e) for e in row) for row in entries)
        self._reduced: ReducedBasis | None = None
        if self.deg_det() is NEG_INF:
            raise PreconditionError("singular basis matrix")

    @classmethod
    def from_polys(cls, p: int, rows: Sequence[Sequence[FpPoly]], shift: int = 0) -> TLattice:
        return cls(p, [[_entry_from_poly(x, shift) for x in r] for r in rows])

    @classmethod
    def identity(cls, p: int, n: int) -> TLattice:
        return cls(p, [[{0: 1} if i == j else {} for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, p: int, exps: Sequence[int]) -> TLattice:
        n = len(exps)
        return cls(p, [[{exps[i]: 1} if i == j else {} for j in range(n)] for i in range(n)])

    # I/O
    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "entries": [[{str(k): v for k, v in sorted(e.items())} for e in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> TLattice:
        try:
            p, n = int(data["p"]), int(data["n"])
            entries = [[{int(k): int(v) for k, v in e.items()} for e in row] for row in data["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed lattice description: {exc}") from exc
        if len(entries) != n:
            raise PreconditionError("entries do not match n")
        return cls(p, entries)

    @classmethod
    def from_json(cls, text: str) -> TLattice:
        return cls.from_dict(json.loads(text))

    # polynomial form
    def poly_form(self) -> tuple[int, list[list[FpPoly]]]:
        """(c, P) with basis matrix = t^-c P and P polynomial."""
        c = max(0, -_min_exp(self.entries))
        P = []
        for row in self.entries:
            r = []
            for e in row:
                coeffs = [0] * (max(e, default=-c) + c + 1)
                for k, v in e.items():
                    coeffs[k + c] = v
                r.append(FpPoly(self.p, coeffs))
            P.append(r)
        return c, P

    def deg_det(self):
        c, P = self.poly_form()
        d = bareiss_det(P, self.p)
        return NEG_INF if d.is_zero() else d.deg - self.n * c

    def det_log(self) -> int:
        """log_2 |det|."""
        return self.deg_det()

    def column(self, j: int) -> list[dict[int, int]]:
        return [self.entries[i][j] for i in range(self.n)]

    # reduction
    def reduce(self) -> ReducedBasis:
        if self._reduced is None:
            self._reduced = _column_reduce(self)
        return self._reduced

    @property
    def minima(self) -> tuple[int, ...]:
        return self.reduce().minima

    def nu(self, R: int) -> int:
        return nu(self, R)

    def matmul_right(self, U: Sequence[Sequence[FpPoly]]) -> TLattice:
        """Basis M * U for a polynomial matrix U (same lattice if U is unimodular)."""
        c, P = self.poly_form()
        n = self.n
        out = [[FpPoly(self.p) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = FpPoly(self.p)
                for k in range(n):
                    acc = acc + P[i][k] * U[k][j]
                out[i][j] = acc
        return TLattice.from_polys(self.p, out, -c)

    def __repr__(self):
        return f"TLattice(p={self.p}, n={self.n}, entries={self.to_dict()['entries']})"


def _column_reduce(lat: TLattice) -> ReducedBasis:
    p, n = lat.p, lat.n
    c, P = lat.poly_form()
    B = [list(r) for r in P]
    T = [[FpPoly(p, (1,)) if i == j else FpPoly(p) for j in range(n)] for i in range(n)]

    def col_deg(j):
        return max((B[i][j].deg for i in range(n)), default=NEG_INF)

    while True:
        degs = [col_deg(j) for j in range(n)]
        if any(dg is NEG_INF for dg in degs):
            raise PreconditionError("singular basis matrix")
        L = [[B[i][j].coeff(degs[j]) for j in range(n)] for i in range(n)]
        ker = linalg.nullspace(L, p, n)
        if not ker:
            break
        lam = ker[0]
        support = [j for j in range(n) if lam[j]]
        k = max(support, key=lambda j: (degs[j], -j))
        inv = pow(lam[k], p - 2, p)
        for j in support:
            if j == k:
                continue
            fac = FpPoly.monomial(p, degs[k] - degs[j], lam[j] * inv)
            for i in range(n):
                B[i][k] = B[i][k] + fac * B[i][j]
                T[i][k] = T[i][k] + fac * T[i][j]
    order = sorted(range(n), key=lambda j: (degs[j], j))
    Bs = tuple(tuple(B[i][j] for j in order) for i in range(n))
    Ts = tuple(tuple(T[i][j] for j in order) for i in range(n))
    lead = tuple(tuple(L[i][j] for j in order) for i in range(n))
    minima = tuple(degs[j] - c for j in order)
    return ReducedBasis(p, c, Bs, Ts, minima, lead)


def nu(lat: TLattice, R: int) -> int:
    """dim_{F_p} of {x in lattice : |x| < 2^R}, from the successive minima."""
    return sum(max(0, R - s) for s in lat.minima)


def required_degree_cap(lat: TLattice, R: int) -> int:
    """Coefficient degree bound for |M u| < 2^R, derived from u = adj(M) x / det M."""
    c, P = lat.poly_form()
    adj_deg = max((x.deg for row in cofactor_matrix(P, lat.p) for x in row if not x.is_zero()), default=0)
    det_deg = bareiss_det(P, lat.p).deg
    return R - 1 + c + adj_deg - det_deg


def nu_bruteforce(lat: TLattice, R: int, degree_cap: int | None = None, budget: int | None = None) -> int:
    """log_p #{u : deg u_i <= cap, |M u| < 2^R}, by enumerating all u."""
    need = required_degree_cap(lat, R)
    cap = need if degree_cap is None else degree_cap
    if cap < need:
        raise PreconditionError(f"degree cap {cap} too small: need at least {need}")
    if cap < 0:
        return 0
    p, n = lat.p, lat.n
    nvars = n * (cap + 1)
    check_budget(p**nvars, budget, "lattice point enumeration")
    # linear map u -> coefficients of M u at exponents >= R
    cols = []
    top = max((k for row in lat.entries for e in row for k in e), default=0) + cap
    for j in range(n):
        colj = lat.column(j)
        for k in range(cap + 1):
            vec = []
            for i in range(n):
                e = colj[i]
                vec.extend(e.get(x - k, 0) for x in range(R, top + 1))
            cols.append(vec)
    A = np.array(cols, dtype=np.int64).T if cols and cols[0] else np.zeros((0, nvars), dtype=np.int64)
    count = 0
    chunk = 1 << 15
    total = p**nvars
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        U = np.stack([(idx // p**r) % p for r in range(nvars)], axis=1)
        if A.shape[0] == 0:
            count += idx.size
        else:
            count += int(np.count_nonzero(~((U @ A.T) % p).any(axis=1)))
    dim = 0
    while p**dim < count:
        dim += 1
    if p**dim != count:
        raise AssertionError(f"solution count {count} is not a power of {p}")
    return dim


def dual(lat: TLattice) -> TLattice:
    """Dual lattice, basis cof(M) t^{-deg det M}.

    This is M^{-T} multiplied by the unit det M / t^{deg det M}, which is an
    isometry, so the successive minima are those of the dual lattice.
    """
    c, P = lat.poly_form()
    C = cofactor_matrix(P, lat.p)
    shift = c - bareiss_det(P, lat.p).deg
    return TLattice.from_polys(lat.p, C, shift)


def duality_holds(lat: TLattice) -> bool:
    s, sd = lat.minima, dual(lat).minima
    n = lat.n
    return all(s[i] == -sd[n - 1 - i] for i in range(n))


def det_relation_holds(lat: TLattice) -> bool:
    return sum(lat.minima) == lat.deg_det()


@dataclass(frozen=True)
class ShrinkInstance:
    """A symmetric n x n matrix U of finite Laurent polynomials and integers a, b > 0."""

    p: int
    U: tuple[tuple[dict, ...], ...]
    a: int
    b: int

    def __post_init__(self):
        n = len(self.U)
        U = tuple(tuple(_clean(self.p, e) for e in row) for row in self.U)
        object.__setattr__(self, "U", U)
        if any(len(r) != n for r in U):
            raise PreconditionError("U must be square")
        if any(U[i][j] != U[j][i] for i in range(n) for j in range(n)):
            raise PreconditionError("U must be symmetric")
        if self.b <= 0:
            raise PreconditionError("need b > 0")

    @property
    def n(self) -> int:
        return len(self.U)

    def shifted(self, s: int) -> ShrinkInstance:
        return ShrinkInstance(self.p, self.U, self.a - s, self.b + s)


def lattice_ab(inst: ShrinkInstance) -> TLattice:
    """Columns of [[t^-a I, 0], [t^b U, t^b I]]."""
    n, a, b = inst.n, inst.a, inst.b
    rows = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n:
                row.append({-a: 1} if i == j else {})
            elif j < n:
                row.append({k + b: v for k, v in inst.U[i - n][j].items()})
            else:
                row.append({b: 1} if i == j else {})
        rows.append(row)
    return TLattice(inst.p, rows)


def self_dual_profile_holds(inst: ShrinkInstance) -> bool:
    s = lattice_ab(inst).minima
    m = len(s)
    return all(s[i] + s[m - 1 - i] == inst.b - inst.a for i in range(m))


def shrink_check(inst: ShrinkInstance, s: int) -> tuple[int, int, bool]:
    """Shrinking inequality nu(L_{a,b}, 0) <= nu(L_{a-s,b+s}, 0) + ns + n max(floor((a-b)/2), 0).

    M_{a-s,b+s} = t^s M_{a,b}, so the shrunk term also equals nu(L_{a,b}, -s);
    the bound follows from the self-dual profile of L_{a,b}.
    """
    if s < 0:
        raise PreconditionError("need s >= 0")
    n = inst.n
    lhs = nu(lattice_ab(inst), 0)
    rhs = nu(lattice_ab(inst.shifted(s)), 0) + n * s + n * max((inst.a - inst.b) // 2, 0)
    return lhs, rhs, lhs <= rhs


def double_shift_rhs(inst: ShrinkInstance, s: int) -> int:
    """nu(L_{a-s,b+s}, -s) + ns + n max(floor((a-b)/2), 0).

    This variant shrinks by s twice (radius and parameters). It is not an
    upper bound in general: U = 0, a = 4, b = 3, s = 1 gives 3 < 4.
    """
    n = inst.n
    return nu(lattice_ab(inst.shifted(s)), -s) + n * s + n * max((inst.a - inst.b) // 2, 0)


def small_solution_dim(inst: ShrinkInstance, budget: int | None = None) -> int:
    """log_p #{x in F_p[t]^n : |x| < 2^a, ||U x|| < 2^-b}, by enumeration."""
    p, n, a, b = inst.p, inst.n, inst.a, inst.b
    if a <= 0:
        return 0
    check_budget(p ** (n * a), budget, "shrink solution enumeration")
    count = 0
    for flat in itertools.product(range(p), repeat=n * a):
        x = [flat[i * a:(i + 1) * a] for i in range(n)]
        ok = True
        for i in range(n):
            acc: dict[int, int] = {}
            for j in range(n):
                for ke, v in inst.U[i][j].items():
                    for kx, xv in enumerate(x[j]):
                        if xv:
                            acc[ke + kx] = (acc.get(ke + kx, 0) + v * xv) % p
            if any(acc.get(-k, 0) for k in range(1, b + 1)):
                ok = False
                break
        count += ok
    dim = 0
    while p**dim < count:
        dim += 1
    return dim


def shrink_sweep_csv(rows: Sequence[tuple[int, int, int, int, int, bool]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "s", "lhs", "rhs", "holds"])
    for r in rows:
        w.writerow([r[0], r[1], r[2], r[3], r[4], str(bool(r[5])).lower()])
    return buf.getvalue()


# random instances -----------------------------------------------------------

def random_lattice(rng: random.Random, p: int, n: int, lo: int = 0, hi: int = 2) -> TLattice:
    while True:
        rows = [[{k: rng.randrange(p) for k in range(lo, hi + 1)} for _ in range(n)] for _ in range(n)]
        try:
            return TLattice(p, rows)
        except PreconditionError:
            continue


def random_unimodular(rng: random.Random, p: int, n: int, steps: int = 4, deg: int = 2):
    U = [[FpPoly(p, (1,)) if i == j else FpPoly(p) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            a = rng.randrange(1, p)
            U = [[x.scale(a) if c == 0 else x for c, x in enumerate(r)] for r in U]
            continue
        fac = FpPoly(p, [rng.randrange(p) for _ in range(deg + 1)])
        for r in range(n):
            U[r][j] = U[r][j] + fac * U[r][i]
    return U


def random_shrink_instance(rng: random.Random, p: int, n: int, amax: int = 4, bmax: int = 3) -> ShrinkInstance:
    U = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            e = {k: rng.randrange(p) for k in range(-3, 1)}
            U[i][j] = e
            U[j][i] = dict(e)
    return ShrinkInstance(p, tuple(tuple(r) for r in U), rng.randint(-1, amax), rng.randint(1, bmax))
