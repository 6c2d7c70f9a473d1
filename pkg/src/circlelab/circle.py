"""Counting realization of the circle method over F_p.

Every class is replaced by its number of F_p-points and every variety with
exponential by the sum of zeta_p^value over its points. The checks below
compare two independent computations of the same quantity and return a
CheckResult; nothing here uses floating point.
"""

from __future__ import annotations

import functools
import itertools
import random
from fractions import Fraction
from math import ceil

import numpy as np
import sympy

from .approx import stratify_arcs
from .cyclotomic import CycSum
from .errors import PreconditionError, check_budget
from .fields import NEG_INF, FpPoly, factor_monic, monic_polys, poly_gcd, polys_below
from .hypersurface import CircleParams, HypersurfaceSpec
from .kernels import (count_zero, histogram, identity_projection, iter_tuples, key_vectors,
                      reduction_projection, taylor_projection, width)
from .laurent import TruncLaurent
from .reports import CheckResult

SLOW_PATH_LIMIT = 2 * 10**5


def _params(f: HypersurfaceSpec, **extra) -> dict:
    out = {"p": f.p, "n": f.n, "d": f.d, "f": f.label()}
    out.update(extra)
    return out


def _phase_weights(phase: np.ndarray, counts: np.ndarray, p: int) -> np.ndarray:
    w = np.zeros(p, dtype=np.int64)
    np.add.at(w, phase, counts)
    return w


# counts ---------------------------------------------------------------------

def count_Me(f: HypersurfaceSpec, e: int, budget: int | None = None) -> int:
    """#{g in Poly_{<=e}^n : f(g) = 0}, zero tuple included; M_{-1} is a point."""
    if e < -1:
        raise PreconditionError("need e >= -1")
    if e == -1:
        return 1
    return count_zero(f, e + 1, identity_projection(width(f, e + 1)), budget)


@functools.lru_cache(maxsize=32)
def _distribution(f: HypersurfaceSpec, length: int, budget: int | None):
    """Support vectors and multiplicities of coeffs(f(g)) over Poly_{<length}^n."""
    w = width(f, length)
    hist = histogram(f, length, identity_projection(w), budget)
    keys = np.nonzero(hist)[0]
    vecs = np.stack([(keys // f.p**r) % f.p for r in range(w)], axis=1)
    return vecs, hist[keys]


def exp_sum(b, f: HypersurfaceSpec, e: int, budget: int | None = None) -> CycSum:
    """sum over g in Poly_{<=e}^n of zeta^{res(alpha f(g))}, alpha = sum b_i t^-i.

    The residue is the pairing b_1 c_0 + ... + b_{de+1} c_{de}.
    """
    w = f.d * e + 1
    if len(b) != w:
        raise PreconditionError(f"alpha needs {w} coefficients, got {len(b)}")
    vecs, cnt = _distribution(f, e + 1, budget)
    phase = vecs @ np.asarray(b, dtype=np.int64) % f.p
    return CycSum.from_weights(f.p, _phase_weights(phase, cnt, f.p))


def exp_sums_all(f: HypersurfaceSpec, e: int, budget: int | None = None) -> dict[tuple, CycSum]:
    """exp_sum for every alpha in F_p^{de+1}, keyed by (b_1, ..., b_{de+1})."""
    p, w = f.p, f.d * e + 1
    vecs, cnt = _distribution(f, e + 1, budget)
    check_budget(p**w * len(cnt), budget, "all exponential sums")
    alphas = key_vectors(p, w)
    phase = alphas @ vecs.T % p
    weights = np.stack([(phase == k).astype(np.int64) @ cnt for k in range(p)], axis=1)
    return {tuple(int(x) for x in a): CycSum.from_weights(p, wt) for a, wt in zip(alphas, weights)}


def orthogonality_check(f: HypersurfaceSpec, e: int, budget: int | None = None) -> CheckResult:
    p, w = f.p, f.d * e + 1
    check_budget(p ** (w + f.n * (e + 1)), budget, "orthogonality double enumeration")
    total = CycSum.from_int(p, 0)
    for s in exp_sums_all(f, e, budget).values():
        total = total + s
    lhs = Fraction(total.to_int(), p**w) if total.is_integer() else total
    rhs = count_Me(f, e, budget)
    return CheckResult("orthogonality", _params(f, e=e), lhs, rhs, lhs == rhs)


# singular series ------------------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _singular_T(h2: FpPoly, f: HypersurfaceSpec, budget: int | None) -> CycSum:
    p, m = f.p, h2.deg
    if m == 0:
        return CycSum.from_int(p, 1)
    hist = histogram(f, m, reduction_projection(h2, width(f, m)), budget)
    keys = np.nonzero(hist)[0]
    cnt = hist[keys]
    R = np.stack([(keys // p**r) % p for r in range(m)], axis=1)
    weights = np.zeros(p, dtype=np.int64)
    for h1 in polys_below(p, m):
        if h1.is_zero() or poly_gcd(h1, h2).deg > 0:
            continue
        # res(h1 r / h2) = [t^{m-1}] (h1 r mod h2), linear in r
        ell = np.array([(h1 * FpPoly.monomial(p, k) % h2).coeff(m - 1) for k in range(m)], dtype=np.int64)
        weights += _phase_weights(R @ ell % p, cnt, p)
    out = CycSum.from_weights(p, weights)
    if not out.is_integer():
        raise AssertionError(f"T({h2}) is not a rational integer: {out}")
    return out


def singular_T(h2: FpPoly, f: HypersurfaceSpec, budget: int | None = None) -> CycSum:
    """sum over h1 coprime to h2 (deg < m) and g in Poly_{<m}^n of zeta^{res(h1 f(g)/h2)}."""
    if h2.p != f.p:
        raise PreconditionError("h2 and f live over different fields")
    if not h2.is_monic():
        raise PreconditionError("h2 must be monic")
    return _singular_T(h2, f, budget)


def singular_Sm(f: HypersurfaceSpec, m: int, budget: int | None = None) -> CycSum:
    """S_m(f) = sum of T(h2) over monic h2 of degree m."""
    if m < 0:
        raise PreconditionError("need m >= 0")
    total = CycSum.from_int(f.p, 0)
    for h2 in monic_polys(f.p, m):
        total = total + singular_T(h2, f, budget)
    return total


def s1_closed_form_check(f: HypersurfaceSpec, budget: int | None = None) -> CheckResult:
    p, n = f.p, f.n
    lhs = singular_Sm(f, 1, budget)
    rhs = f.affine_count() * p**2 - p ** (n + 1)
    return CheckResult("singular_S1", _params(f), lhs, rhs, lhs == rhs)


def crt_mult_check(f: HypersurfaceSpec, l1: FpPoly, l2: FpPoly, budget: int | None = None) -> CheckResult:
    if not (l1.is_monic() and l2.is_monic()):
        raise PreconditionError("moduli must be monic")
    if poly_gcd(l1, l2).deg != 0:
        raise PreconditionError("moduli are not coprime")
    lhs = singular_T(l1 * l2, f, budget)
    rhs = singular_T(l1, f, budget) * singular_T(l2, f, budget)
    return CheckResult("crt_mult", _params(f, l1=l1, l2=l2), lhs, rhs, lhs == rhs)


def euler_coeff_check(f: HypersurfaceSpec, m: int, budget: int | None = None) -> CheckResult:
    """S_m regrouped as sum over h2 of products of prime-power factors T(pi^j).

    T((t-x)^i) is taken from local_Ui, which uses the Taylor expansion at x
    instead of reduction modulo (t-x)^i.
    """
    p = f.p
    total = CycSum.from_int(p, 0)
    local_ok = True
    for h2 in monic_polys(p, m):
        prod = CycSum.from_int(p, 1)
        for pi, j in factor_monic(h2):
            if pi.deg == 1:
                x = (-pi.coeff(0)) % p
                u = local_Ui(f, j, x, budget)
                local_ok &= u == singular_T(pi**j, f, budget)
                prod = prod * u
            else:
                prod = prod * singular_T(pi**j, f, budget)
        total = total + prod
    rhs = singular_Sm(f, m, budget)
    ok = total == rhs and local_ok
    notes = [] if local_ok else ["U_i(f)_x differs from T((t-x)^i)"]
    return CheckResult("euler_coeff", _params(f, m=m), total, rhs, ok, notes)


# local factors and jet counts ----------------------------------------------

def local_Ui(f: HypersurfaceSpec, i: int, x: int, budget: int | None = None) -> CycSum:
    """U_i(f)_x = sum over h (deg < i, h(x) != 0) and g in Poly_{<i}^n of zeta^{res(h f(g)/(t-x)^i)}.

    The residue is the (t-x)^{i-1} Taylor coefficient of h f(g).
    """
    p = f.p
    if i < 1:
        raise PreconditionError("need i >= 1")
    x %= p
    hist = histogram(f, i, taylor_projection(p, width(f, i), x, i), budget)
    keys = np.nonzero(hist)[0]
    cnt = hist[keys]
    Ftay = np.stack([(keys // p**r) % p for r in range(i)], axis=1)
    weights = np.zeros(p, dtype=np.int64)
    for h in polys_below(p, i):
        if h(x) == 0:
            continue
        htay = h.taylor(x) + (0,) * i
        ell = np.array([htay[i - 1 - b] for b in range(i)], dtype=np.int64)
        weights += _phase_weights(Ftay @ ell % p, cnt, p)
    out = CycSum.from_weights(p, weights)
    if not out.is_integer():
        raise AssertionError(f"U_{i}(f)_{x} is not a rational integer: {out}")
    return out


def local_Ui_structural(f: HypersurfaceSpec, i: int, x: int, budget: int | None = None) -> int:
    """p^{i-1}(p-1) #Lambda_i - p^{i-1}(p^n #Lambda_{i-1} - #Lambda_i)."""
    p, n = f.p, f.n
    li, lprev = count_lambda(f, i, x, budget), count_lambda(f, i - 1, x, budget)
    return p ** (i - 1) * (p - 1) * li - p ** (i - 1) * (p**n * lprev - li)


def local_Ui_check(f: HypersurfaceSpec, i: int, x: int, budget: int | None = None) -> CheckResult:
    lhs = local_Ui(f, i, x, budget)
    rhs = local_Ui_structural(f, i, x, budget)
    return CheckResult("local_Ui", _params(f, i=i, x=x), lhs, rhs, lhs == rhs)


def _laurent_eval(f: HypersurfaceSpec, ys) -> TruncLaurent:
    """f at a tuple of exact Laurent polynomials."""
    p = f.p
    total = TruncLaurent.zero(p)
    for exps, c in f.monomials:
        term = TruncLaurent(p, 0, (c,))
        for y, a in zip(ys, exps):
            for _ in range(a):
                term = term * y
        total = total + term
    return total


def _count_lambda_inf(f: HypersurfaceSpec, N: int, budget: int | None) -> int:
    """#{g : deg g_i < N, f(g(1/t)) in t^-N k[1/t]} by Laurent arithmetic."""
    p, n = f.p, f.n
    check_budget(p ** (n * N), min(budget or SLOW_PATH_LIMIT, SLOW_PATH_LIMIT), "Laurent jet count at infinity")
    count = 0
    for flat in itertools.product(range(p), repeat=n * N):
        ys = [TruncLaurent(p, -(N - 1), tuple(reversed(flat[i * N:(i + 1) * N]))) for i in range(n)]
        val = _laurent_eval(f, ys)
        count += val.ord_lt(-(N - 1))
    return count


def count_lambda(f: HypersurfaceSpec, N: int, place=0, budget: int | None = None) -> int:
    """#Lambda_N(f, place): place is x in F_p or the string 'inf'."""
    if N < 0:
        raise PreconditionError("need N >= 0")
    if N == 0:
        return 1
    if place in ("inf", "infinity", None):
        return _count_lambda_inf(f, N, budget)
    x = int(place) % f.p
    return count_zero(f, N, taylor_projection(f.p, width(f, N), x, N), budget)


def lambda_star_count(f: HypersurfaceSpec, N: int, x: int, budget: int | None = None) -> int:
    """#{g in Lambda_N(f, x) : g not identically 0 mod (t - x)}, by direct enumeration."""
    p = f.p
    if N <= 0:
        return 0
    x %= p
    proj = taylor_projection(p, width(f, N), x, N)
    xp = np.array([pow(x, k, p) for k in range(N)], dtype=np.int64)
    total = 0
    for G, F in iter_tuples(f, N, budget):
        jet_zero = ~((F @ proj.T) % p).any(axis=1)
        unit = ((G @ xp) % p).any(axis=1)
        total += int(np.count_nonzero(jet_zero & unit))
    return total


def lambda_place_check(f: HypersurfaceSpec, N: int, budget: int | None = None) -> CheckResult:
    counts = {str(x): count_lambda(f, N, x, budget) for x in range(f.p)}
    counts["inf"] = count_lambda(f, N, "inf", budget)
    vals = set(counts.values())
    return CheckResult("lambda_places", _params(f, N=N), counts, counts["0"], len(vals) == 1)


def telescoping_check(f: HypersurfaceSpec, N: int, x: int, budget: int | None = None) -> CheckResult:
    """1 + sum_{i<=N} U_i(f)_x p^{-in} = p^{-N(n-1)} #Lambda_N(f, x)."""
    p, n = f.p, f.n
    lhs = Fraction(1)
    for i in range(1, N + 1):
        lhs += Fraction(local_Ui(f, i, x, budget).to_int(), p ** (i * n))
    rhs = Fraction(count_lambda(f, N, x, budget), p ** (N * (n - 1)))
    return CheckResult("telescoping", _params(f, N=N, x=x), lhs, rhs, lhs == rhs)


def density_first_term(p: int, n: int, d: int, N: int) -> Fraction:
    """Normalized count of the g divisible by (t-x)^{ceil(N/d)}: p^{N - n ceil(N/d)}."""
    return Fraction(p) ** (N - n * ceil(N / d))


def density_limit(p: int, n: int, d: int, proj_count: int) -> Fraction:
    """p^{-(n-2)} #X~ (1 - 1/p) / (1 - p^{-(n-d)})."""
    if n <= d:
        raise PreconditionError("closed form needs n > d")
    q = Fraction(p)
    return q ** (2 - n) * proj_count * (1 - 1 / q) / (1 - q ** (d - n))


def density_symbolic_identity(n: int, d: int) -> bool:
    """Resum the recursion as a geometric series in L and compare with the closed form.

    Both sides are rational functions of L = 1 + s (s > 0) and the point
    count X of the projective hypersurface; the comparison is exact.
    """
    s, X = sympy.symbols("s X", positive=True)
    K, i = sympy.symbols("K i", integer=True, nonnegative=True)
    L = 1 + s
    const = L ** (-(n - 1)) * (L - 1) * X
    partial = sympy.summation(const * L ** (-(n - d) * i), (i, 0, K - 1))
    if isinstance(partial, sympy.Piecewise):
        # the branch L^{-(n-d)} = 1 is excluded because n > d
        partial = next(expr for expr, cond in partial.args if cond == sympy.true)
    limit = sympy.limit(partial, K, sympy.oo)
    closed = L ** (-(n - 2)) * X * (1 - 1 / L) / (1 - L ** (-(n - d)))
    return sympy.simplify(limit - closed) == 0


def density_check(f: HypersurfaceSpec, x: int, Nmax: int, budget: int | None = None) -> CheckResult:
    """Local-density recursion at every N <= Nmax and, for n > d, its limit."""
    p, n, d = f.p, f.n, f.d
    lam = [count_lambda(f, N, x, budget) for N in range(Nmax + 1)]
    star = [lambda_star_count(f, N, x, budget) for N in range(Nmax + 1)]
    proj_count = f.projective_count()
    notes = []
    ok = True
    seq = []
    for N in range(1, Nmax + 1):
        lhs = Fraction(lam[N], p ** (N * (n - 1)))
        rhs = density_first_term(p, n, d, N)
        i = 0
        while d * i <= N - 1:
            rhs += Fraction(p) ** (-(n - d) * i) * Fraction(star[N - d * i], p ** ((N - d * i) * (n - 1)))
            i += 1
        seq.append(lhs)
        if lhs != rhs:
            ok = False
            notes.append(f"recursion fails at N={N}: {lhs} != {rhs}")
        if Fraction(star[N], p ** (N * (n - 1))) != Fraction((p - 1) * proj_count, p ** (n - 1)):
            ok = False
            notes.append(f"normalized Lambda*_{N} is not (p-1)#X~/p^(n-1)")
    if n > d:
        limit = density_limit(p, n, d, proj_count)
        if not density_symbolic_identity(n, d):
            ok = False
            notes.append("symbolic resummation disagrees with the closed form")
        # the tail after N is the first term plus the missing geometric terms
        for N, value in enumerate(seq, start=1):
            k = ceil(N / d)
            tail = density_limit(p, n, d, proj_count) * Fraction(p) ** (-(n - d) * k)
            if value - density_first_term(p, n, d, N) + tail != limit:
                ok = False
                notes.append(f"partial sum at N={N} is not the truncated geometric series")
    else:
        limit = None
        notes.append("n <= d: closed form skipped, recursion only")
    return CheckResult("local_density", _params(f, x=x, Nmax=Nmax), seq, limit, ok, notes)


# major arcs ---------------------------------------------------------------

def count_V(f: HypersurfaceSpec, e: int, gamma: int, route: str = "kernel", budget: int | None = None) -> int:
    """#{y in (t^-1 F_p + ... + t^{-e-1} F_p)^n : ord f(y) < -d - gamma + 1}."""
    p, n, d = f.p, f.n, f.d
    if route == "kernel":
        # g = t^{e+1} y is a polynomial of degree <= e; the condition kills the
        # coefficients of t^{de-gamma+1}, ..., t^{de} of f(g)
        w = width(f, e + 1)
        proj = np.zeros((gamma, w), dtype=np.int64)
        for k in range(gamma):
            proj[k, d * e - k] = 1
        return count_zero(f, e + 1, proj, budget)
    if route == "laurent":
        check_budget(p ** (n * (e + 1)), min(budget or SLOW_PATH_LIMIT, SLOW_PATH_LIMIT), "Laurent V count")
        count = 0
        for flat in itertools.product(range(p), repeat=n * (e + 1)):
            ys = [TruncLaurent(p, -(e + 1), tuple(reversed(flat[i * (e + 1):(i + 1) * (e + 1)]))) for i in range(n)]
            count += _laurent_eval(f, ys).ord_lt(-d - gamma + 1)
        return count
    raise PreconditionError(f"unknown route {route!r}")


def major_minor_check(f: HypersurfaceSpec, e: int, gamma: int | None = None, delta: int | None = None,
                      budget: int | None = None) -> CheckResult:
    """Arc partition, per-stratum major arc identity and the V/Lambda relation."""
    p, n, d = f.p, f.n, f.d
    cp = CircleParams(n, d, e, gamma, delta)
    gamma, delta = cp.gamma, cp.delta
    check_budget(p ** (cp.width + n * (e + 1)), budget, "major/minor arc bookkeeping")
    table = stratify_arcs(p, d, e, gamma, delta, budget)
    sums = exp_sums_all(f, e, budget)
    Me = count_Me(f, e, budget)
    V = count_V(f, e, gamma, "kernel", budget)
    lam_inf = count_lambda(f, gamma, "inf", budget)
    zero = CycSum.from_int(p, 0)

    strata = {}
    for x in table.entries:
        strata[x.label] = strata.get(x.label, zero) + sums[x.b]
    total = sum(strata.values(), zero)

    lhs = {"total": total}
    rhs = {"total": p**cp.width * Me}
    ok = total == p**cp.width * Me
    for mp in table.major_degrees():
        key = f"Major({mp})"
        lhs[key] = strata[key] * p ** (n * mp)
        rhs[key] = singular_Sm(f, mp, budget) * (p**gamma * V)
        ok &= lhs[key] == rhs[key]
    lhs["V"] = V
    rhs["V"] = lam_inf * p ** (n * (e + 1 - gamma))
    ok &= lhs["V"] == rhs["V"]
    notes = [f"{k} sum = {v}" for k, v in strata.items() if k.startswith("Minor")]
    if not table.minor_indices():
        notes.append("minor set empty")
    params = _params(f, e=e, gamma=gamma, delta=delta)
    return CheckResult("major_minor", params, lhs, rhs, ok, notes)


def order_small_check(f: HypersurfaceSpec, e: int, gamma: int, mprime: int, samples: int = 100,
                      seed: int = 0, allow_violation: bool = False) -> CheckResult:
    """Sample ord(theta (f(gbar + h2 q) - f(h2 q))) < -1 with ord theta <= -de-2+gamma.

    With ``allow_violation`` the precondition m' + gamma <= e + 1 may fail;
    this is the negative control, where a counterexample is expected.
    """
    p, n, d = f.p, f.n, f.d
    if mprime + gamma > e + 1 and not allow_violation:
        raise PreconditionError("need m' + gamma <= e + 1")
    if mprime > e:
        raise PreconditionError("need m' <= e")
    rng = random.Random(seed)
    top = -d * e - 2 + gamma
    good = 0
    witness = None
    for _ in range(samples):
        h2 = FpPoly(p, [rng.randrange(p) for _ in range(mprime)] + [1])
        theta = TruncLaurent.from_dict(p, {top: rng.randrange(1, p), **{top - k: rng.randrange(p) for k in range(1, 4)}})
        gbar = [FpPoly(p, [rng.randrange(p) for _ in range(mprime)]) for _ in range(n)]
        qs = [FpPoly(p, [rng.randrange(p) for _ in range(e - mprime + 1)]) for _ in range(n)]
        shifted = [gb + h2 * q for gb, q in zip(gbar, qs)]
        base = [h2 * q for q in qs]
        diff = _poly_eval(f, shifted) - _poly_eval(f, base)
        val = theta * TruncLaurent.from_poly(diff)
        if val.ord_lt(-1):
            good += 1
        elif witness is None:
            witness = {"h2": h2.c, "gbar": [g.c for g in gbar], "q": [q.c for q in qs], "ord": val.ord}
    notes = [f"counterexample {witness}"] if witness else []
    params = _params(f, e=e, gamma=gamma, mprime=mprime, samples=samples, seed=seed)
    return CheckResult("order_small", params, good, samples, good == samples, notes)


def _poly_eval(f: HypersurfaceSpec, gs) -> FpPoly:
    p = f.p
    total = FpPoly(p)
    for exps, c in f.monomials:
        term = FpPoly(p, (c,))
        for g, a in zip(gs, exps):
            if a:
                term = term * g**a
        total = total + term
    return total


# Mor_e and lines ------------------------------------------------------------

def count_mor_direct(f: HypersurfaceSpec, e: int, budget: int | None = None) -> int:
    """#Mor_e(P^1, X~)(F_p): coprime tuples of exact degree e on X, modulo scalars."""
    p, n = f.p, f.n
    count = 0
    for G, F in iter_tuples(f, e + 1, budget):
        mask = ~F.any(axis=1) & G[:, :, e].any(axis=1)
        for g in G[mask]:
            polys = [FpPoly(p, row) for row in g]
            acc = FpPoly(p)
            for poly in polys:
                acc = poly_gcd(acc, poly)
            count += acc.deg == 0
    if count % (p - 1):
        raise AssertionError("scalar action is free, count must be divisible by p - 1")
    return count // (p - 1)


def mor_lines_check(f: HypersurfaceSpec, e: int, budget: int | None = None) -> CheckResult:
    if e < 1:
        raise PreconditionError("need e >= 1")
    q = f.p
    M = {k: count_Me(f, k, budget) for k in (e, e - 1, e - 2)}
    direct = count_mor_direct(f, e, budget)
    relation = M[e] - (q + 1) * M[e - 1] + q * M[e - 2]
    lhs = {"(q-1)Mor_e": (q - 1) * direct}
    rhs = {"(q-1)Mor_e": relation}
    ok = (q - 1) * direct == relation
    notes = []
    if e == 1:
        pgl2 = q**3 - q
        Xt = f.projective_count()
        ok &= direct % pgl2 == 0
        F1 = Fraction(direct, pgl2)
        from_counts = Fraction(M[1] - (q * q - 1) * Xt - 1, pgl2 * (q - 1))
        lhs["F_1"] = F1
        rhs["F_1"] = from_counts
        ok &= F1 == from_counts and F1.denominator == 1 and F1 >= 0
        notes.append(f"#Mor_1 = {direct}")
    return CheckResult("mor_lines", _params(f, e=e, M=M), lhs, rhs, ok, notes)
