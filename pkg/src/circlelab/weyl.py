"""Weyl differencing data: the multilinear forms Psi_j and the sets they cut out.

Arguments u^(1), ..., u^(d-1) are stored as an array of shape
(T, d-1, L, n): T tuples, each a list of d-1 vectors of n polynomials with
L coefficients (low to high).
"""

from __future__ import annotations

import itertools

import numpy as np

from .approx import RatApprox
from .errors import PreconditionError, check_budget
from .fields import NEG_INF
from .hypersurface import HypersurfaceSpec
from .kernels import evaluate_batch
from .laurent import TruncLaurent
from .reports import CheckResult

CHUNK = 1 << 13


def _require_large_p(f: HypersurfaceSpec) -> None:
    if f.p <= f.d:
        raise PreconditionError(f"Weyl systems need p > d so that d! is a unit (p={f.p}, d={f.d})")


def _tuples(p: int, d: int, n: int, L: int, lo: int, hi: int) -> np.ndarray:
    """Tuples with flat index in [lo, hi), digits ordered as (arg, coeff, var)."""
    k = (d - 1) * L * n
    idx = np.arange(lo, hi, dtype=np.int64)
    digits = np.stack([(idx // p**r) % p for r in range(k)], axis=1) if k else np.zeros((hi - lo, 0), np.int64)
    return digits.reshape(-1, d - 1, L, n)


def contract(tensor: np.ndarray, vecs: list[np.ndarray], p: int) -> np.ndarray:
    """sum over j_1..j_r of tensor[j_1, ..., j_r, ...] vecs[0][:, j_1] ... (batched)."""
    Z = np.einsum("tx,x...->t...", vecs[0], tensor) % p
    for v in vecs[1:]:
        Z = np.einsum("tx,tx...->t...", v, Z) % p
    return Z


def psi_polys(tensor: np.ndarray, U: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of Psi_j(u^(1), ..., u^(d-1)) as polynomials in t, shape (T, n, (d-1)(L-1)+1)."""
    T, r, L, n = U.shape
    out = np.zeros((T, n, r * (L - 1) + 1), dtype=np.int64)
    for combo in itertools.product(range(L), repeat=r):
        vecs = [U[:, a, i, :] for a, i in enumerate(combo)]
        out[:, :, sum(combo)] += contract(tensor, vecs, p)
    return out % p


def _alpha_array(b, length: int, p: int) -> np.ndarray:
    out = np.zeros(length + 1, dtype=np.int64)
    m = min(len(b), length)
    out[1:m + 1] = np.asarray(b[:m], dtype=np.int64) % p
    return out


def n_alpha_mask(f: HypersurfaceSpec, b, U: np.ndarray, E: int) -> np.ndarray:
    """u in N(alpha): coefficients of t^-1 .. t^-E of alpha Psi_j(u) vanish for all j."""
    p = f.p
    P = psi_polys(f.multilinear().tensor, U, p)
    K = P.shape[2]
    a = _alpha_array(b, K + E, p)
    ok = np.ones(U.shape[0], dtype=bool)
    for i in range(E):
        # t^{-i-1} coefficient of (sum_r b_r t^-r)(sum_k P_k t^k) is sum_k b_{k+i+1} P_k
        coeff = P @ a[i + 1:i + 1 + K] % p
        ok &= ~coeff.any(axis=1)
    return ok


def rewrite_mask(f: HypersurfaceSpec, b, U: np.ndarray, E: int) -> np.ndarray:
    """u solving sum b_{i_1+..+i_{d-1}+i+1} c_{j_1..j_{d-1} j} y_{i_1 j_1} ... = 0 for all i < E, j."""
    p, d = f.p, f.d
    c = f.multilinear().symmetric_tensor()
    L = U.shape[2]
    a = _alpha_array(b, (d - 1) * (L - 1) + E, p)
    acc = np.zeros((U.shape[0], E, f.n), dtype=np.int64)
    for combo in itertools.product(range(L), repeat=d - 1):
        vecs = [U[:, r, i, :] for r, i in enumerate(combo)]
        val = contract(c, vecs, p)
        s = sum(combo)
        for i in range(E):
            if a[s + i + 1]:
                acc[:, i, :] += a[s + i + 1] * val
    return ~(acc % p).reshape(U.shape[0], -1).any(axis=1)


def _G_alpha(f: HypersurfaceSpec, a_full: np.ndarray, A: np.ndarray) -> np.ndarray:
    """res(alpha f(g)) for a batch of coefficient arrays A of shape (B, n, E)."""
    F = evaluate_batch(f, A)
    return F @ a_full[1:F.shape[1] + 1] % f.p


def differencing_mask(f: HypersurfaceSpec, b, U: np.ndarray, E: int) -> np.ndarray:
    """y in V(G_alpha): the (d-1)-fold difference of G_alpha along y is constant in a.

    The difference has degree <= 1 in a, so it is constant exactly when it
    takes the same value at a = 0 and at every unit vector.
    """
    p, n, d = f.p, f.n, f.d
    T = U.shape[0]
    a_full = _alpha_array(b, d * (E - 1) + 1, p)
    Y = np.transpose(U, (0, 1, 3, 2))  # (T, d-1, n, E): y^(r) as n polynomials
    points = [np.zeros((n, E), dtype=np.int64)]
    for j in range(n):
        for k in range(E):
            e = np.zeros((n, E), dtype=np.int64)
            e[j, k] = 1
            points.append(e)
    values = []
    for a in points:
        D = np.zeros(T, dtype=np.int64)
        for eps in itertools.product((0, 1), repeat=d - 1):
            shift = np.zeros((T, n, E), dtype=np.int64)
            for r, on in enumerate(eps):
                if on:
                    shift += Y[:, r]
            sign = -1 if sum(eps) % 2 else 1
            D += sign * _G_alpha(f, a_full, (a[None] + shift) % p)
        values.append(D % p)
    base = values[0]
    return np.all([v == base for v in values[1:]], axis=0) if len(values) > 1 else np.ones(T, bool)


def weyl_id_check(f: HypersurfaceSpec, E: int, b, budget: int | None = None) -> CheckResult:
    """V(G_alpha) = N(alpha) element by element, plus the coefficient equations."""
    _require_large_p(f)
    p, n, d = f.p, f.n, f.d
    need = (d - 1) * (E - 1) + E
    if len(b) < need:
        raise PreconditionError(f"alpha needs at least {need} coefficients")
    total = p ** ((d - 1) * n * E)
    check_budget(total, budget, "Weyl identification")
    sizes = [0, 0, 0]
    agree = True
    for lo in range(0, total, CHUNK):
        U = _tuples(p, d, n, E, lo, min(lo + CHUNK, total))
        m1 = n_alpha_mask(f, b, U, E)
        m2 = differencing_mask(f, b, U, E)
        m3 = rewrite_mask(f, b, U, E)
        agree &= bool(np.array_equal(m1, m2) and np.array_equal(m1, m3))
        sizes[0] += int(m1.sum())
        sizes[1] += int(m2.sum())
        sizes[2] += int(m3.sum())
    params = {"p": p, "n": n, "d": d, "f": f.label(), "E": E, "alpha": list(b)}
    notes = [f"#rewrite equations = {sizes[2]}"]
    return CheckResult("weyl_id", params, sizes[0], sizes[1], agree, notes)


# shrinking conditions --------------------------------------------------------

def shrink_conditions(rho: int, psi, s: int, E: int, d: int) -> tuple[bool, bool]:
    """Conditions (1) and (2) for the shrunk set to lie in {Psi = 0}; psi may be -inf."""
    c1a = -E - 1 - (d - 1) * s < -rho
    c1b = True if psi == NEG_INF else (d - 1) * (E - 1 - s) + psi < -rho
    c2a = (d - 1) * (E - 1 - s) < rho
    c2b = False if psi == NEG_INF else -E - (d - 1) * s - psi <= rho
    return c1a and c1b, c2a or c2b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def s_rational(rho: int, E: int, d: int) -> int:
    """Admissible s when theta = 0."""
    return max(0, _ceil_div(rho - E, d - 1), E - 1 - (rho - 1) // (d - 1))


def s_polynomial_free(psi: int, E: int, d: int) -> int:
    """Admissible s when h1/h2 = 0 (rho = 0) and ord theta = psi."""
    return max(0, E - 1 + _ceil_div(1 + psi, d - 1), min(E, -((E + psi) // (d - 1))))


def shrunk_set_mask(f: HypersurfaceSpec, approx: RatApprox, U: np.ndarray, E: int, s: int) -> np.ndarray:
    """u in N_s(alpha): ord {alpha Psi_j(u)} < -E - (d-1)s for all j."""
    p, d = f.p, f.d
    P = psi_polys(f.multilinear().tensor, U, p)
    K = P.shape[2]
    depth = E + (d - 1) * s
    alpha = TruncLaurent.from_rational(approx.h1, approx.h2, -(depth + K)) + approx.theta
    b = [alpha.coeff(-r) for r in range(1, depth + K + 1)]
    a = _alpha_array(b, depth + K, p)
    ok = np.ones(U.shape[0], dtype=bool)
    for i in range(depth):
        ok &= ~(P @ a[i + 1:i + 1 + K] % p).any(axis=1)
    return ok


def weyl_vanish_check(f: HypersurfaceSpec, E: int, approx: RatApprox, s: int,
                      budget: int | None = None) -> CheckResult:
    """Every u in N_s(alpha) has Psi_j(u) = 0 for all j, when conditions (1), (2) hold."""
    _require_large_p(f)
    p, n, d = f.p, f.n, f.d
    rho = approx.h2.deg
    psi = approx.theta_ord()
    if isinstance(psi, str):
        raise PreconditionError(f"ord theta undetermined ({psi}); give theta exactly")
    c1, c2 = shrink_conditions(rho, psi, s, E, d)
    L = E - s
    params = {"p": p, "n": n, "d": d, "f": f.label(), "E": E, "s": s, "rho": rho, "psi": psi,
              "h1": approx.h1, "h2": approx.h2}
    notes = [] if c1 and c2 else [f"conditions violated: (1)={c1}, (2)={c2}; vanishing not implied"]
    if L <= 0:
        notes.append("s >= E: the shrunk set is {0}")
        return CheckResult("weyl_vanish", params, 1, 1, True, notes)
    total = p ** ((d - 1) * n * L)
    check_budget(total, budget, "shrunk Weyl set")
    size = vanish = 0
    tensor = f.multilinear().tensor
    for lo in range(0, total, CHUNK):
        U = _tuples(p, d, n, L, lo, min(lo + CHUNK, total))
        mask = shrunk_set_mask(f, approx, U, E, s)
        zero = ~psi_polys(tensor, U, p).reshape(U.shape[0], -1).any(axis=1)
        size += int(mask.sum())
        vanish += int((mask & zero).sum())
    return CheckResult("weyl_vanish", params, size, vanish, size == vanish or not (c1 and c2), notes)


def diag_vanish_check(f: HypersurfaceSpec, E: int, budget: int | None = None) -> CheckResult:
    """Diagonal points h_0 + h_1 t + ... with Psi_j(h, ..., h) = 0 identically: only 0 when f is smooth."""
    _require_large_p(f)
    p, n, d = f.p, f.n, f.d
    total = p ** (n * E)
    check_budget(total, budget, "diagonal Weyl set")
    tensor = f.multilinear().tensor
    solutions = 0
    witness = None
    for lo in range(0, total, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
        H = np.stack([(idx // p**r) % p for r in range(n * E)], axis=1).reshape(-1, 1, E, n)
        U = np.repeat(H, d - 1, axis=1)
        zero = ~psi_polys(tensor, U, p).reshape(U.shape[0], -1).any(axis=1)
        solutions += int(zero.sum())
        hits = np.nonzero(zero & (idx != 0))[0]
        if witness is None and hits.size:
            witness = H[int(hits[0]), 0].T.tolist()
    params = {"p": p, "n": n, "d": d, "f": f.label(), "E": E}
    notes = [f"nonzero solution {witness}"] if solutions > 1 else []
    return CheckResult("diag_vanish", params, solutions, 1, solutions == 1, notes)


# integer inequality --------------------------------------------------------

def jens_lhs(m: int, n: int, d: int) -> int:
    return 2**d * m - (m // (d - 1)) * n


def jens_rhs(n: int, d: int, e: int) -> int:
    return ((e + 1) // (2 * d - 2)) * (2**d * (d - 1) - n) + 2**d * (d - 1)


def bounds_check(n: int, d: int, e: int, window: int = 100) -> CheckResult:
    """max over m >= Delta of 2^d m - floor(m/(d-1)) n against its claimed bound.

    Moving m by d-1 changes the left side by 2^d(d-1) - n < 0, so the
    maximum over all m >= Delta is attained in [Delta, Delta + d - 2]; the
    scan covers at least that period.
    """
    if d < 2:
        raise PreconditionError("need d >= 2")
    if n <= 2**d * (d - 1):
        raise PreconditionError(f"hypothesis n > 2^d(d-1) = {2**d * (d - 1)} fails for n={n}")
    delta = (e + 1) // 2
    window = max(window, d - 2)
    rhs = jens_rhs(n, d, e)
    worst = max(jens_lhs(m, n, d) for m in range(delta, delta + window + 1))
    increment = 2**d * (d - 1) - n
    ok = worst <= rhs and increment < 0
    params = {"n": n, "d": d, "e": e, "window": window, "delta": delta}
    return CheckResult("jens_bound", params, worst, rhs, ok, [f"period increment {increment}"])

