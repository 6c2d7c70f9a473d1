"""Enumeration kernel front end.

Every brute-force count in the package reduces to one primitive: run over
all tuples g = (g_1, ..., g_n) of polynomials of degree < length, compute
the coefficient vector of f(g), apply a linear projection over F_p, and
histogram the projected keys. The compiled backend is picked at import when
it has been built; set CIRCLELAB_BACKEND=python to force the numpy one.
"""

from __future__ import annotations

import functools
import os
from concurrent.futures import ThreadPoolExecutor
from math import comb

import numpy as np

from . import _pykernels
from .errors import check_budget
from .fields import FpPoly
from .hypersurface import HypersurfaceSpec

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_requested = os.environ.get("CIRCLELAB_BACKEND", "").strip().lower()
if _requested in BACKENDS:
    BACKEND = _requested
else:
    BACKEND = "cython" if "cython" in BACKENDS else "python"


def set_backend(name: str) -> None:
    global BACKEND
    if name not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}")
    BACKEND = name


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("LAB_THREADS", "1")))
    except ValueError:
        return 1


@functools.lru_cache(maxsize=64)
def _table(p: int, length: int, d: int) -> np.ndarray:
    return _pykernels.power_table(p, length, d)


def width(f: HypersurfaceSpec, length: int) -> int:
    """Number of coefficients of f(g) when every g_i has degree < length."""
    return f.d * (length - 1) + 1 if length > 0 else 1


def histogram(f: HypersurfaceSpec, length: int, proj: np.ndarray, budget: int | None = None,
              zero_only: bool = False, backend: str | None = None) -> np.ndarray:
    """Histogram of proj . coeffs(f(g)) over g in Poly_{<length}^n.

    Key of a projected vector (k_0, ..., k_{K-1}) is sum k_r p^r.
    """
    p, n = f.p, f.n
    proj = np.ascontiguousarray(np.asarray(proj, dtype=np.int64) % p)
    K = proj.shape[0]
    if length == 0:
        # only g = 0, and f(0) = 0 projects to key 0
        out = np.zeros(1 if zero_only else p**K, dtype=np.int64)
        out[0] = 1
        return out
    total = p ** (n * length)
    check_budget(total, budget, f"enumeration of Poly_<{length}^{n} over F_{p}")
    if proj.shape[1] != width(f, length):
        raise ValueError("projection width does not match the coefficient count of f(g)")
    impl = BACKENDS[backend or BACKEND]
    table = _table(p, length, f.d)
    exps = np.ascontiguousarray(f.exps_array())
    coeffs = np.ascontiguousarray(f.coeffs_array())
    threads = thread_count()
    if threads == 1 or total < 1 << 16:
        return impl.coefficient_histogram(p, n, length, exps, coeffs, proj, table, 0, total, zero_only)
    # fixed block boundaries, so the summed histogram does not depend on scheduling
    blocks = 4 * threads
    edges = [total * k // blocks for k in range(blocks + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(
            lambda k: impl.coefficient_histogram(p, n, length, exps, coeffs, proj, table,
                                                 edges[k], edges[k + 1], zero_only),
            range(blocks),
        )
        return sum(parts)


def count_zero(f: HypersurfaceSpec, length: int, proj: np.ndarray, budget: int | None = None) -> int:
    return int(histogram(f, length, proj, budget, zero_only=True)[0])


# projections ---------------------------------------------------------------

def identity_projection(w: int) -> np.ndarray:
    return np.eye(w, dtype=np.int64)


def taylor_projection(p: int, w: int, x: int, N: int) -> np.ndarray:
    """Rows k < N: coefficient of (t - x)^k as a functional of t-coefficients."""
    proj = np.zeros((N, w), dtype=np.int64)
    for k in range(min(N, w)):
        for j in range(k, w):
            proj[k, j] = comb(j, k) * pow(x, j - k, p) % p
    return proj


def reduction_projection(h2: FpPoly, w: int) -> np.ndarray:
    """Column j holds the coefficients of t^j mod h2."""
    m = h2.deg
    proj = np.zeros((m, w), dtype=np.int64)
    for j in range(w):
        r = FpPoly.monomial(h2.p, j) % h2
        for k, a in enumerate(r.c):
            proj[k, j] = a
    return proj


def key_vectors(p: int, K: int) -> np.ndarray:
    """All vectors of F_p^K, row index equal to their key."""
    keys = np.arange(p**K, dtype=np.int64)
    return np.stack([(keys // p**r) % p for r in range(K)], axis=1) if K else np.zeros((1, 0), dtype=np.int64)


def evaluate_batch(f: HypersurfaceSpec, G: np.ndarray) -> np.ndarray:
    """Coefficients of f(g) for a batch G of shape (B, n, length)."""
    p = f.p
    B, n, length = G.shape
    if length == 0:
        return np.zeros((B, 1), dtype=np.int64)
    digits = np.array([p**k for k in range(length)], dtype=np.int64)
    vals = [(G[:, i, :] % p) @ digits for i in range(n)]
    table = _table(p, length, f.d)
    w = width(f, length)
    F = np.zeros((B, w), dtype=np.int64)
    for exps, c in f.monomials:
        factors = [(i, a) for i, a in enumerate(exps) if a]
        i0, a0 = factors[0]
        term = table[vals[i0], a0, :]
        for i, a in factors[1:]:
            term = _pykernels._batch_conv(term, table[vals[i], a, :], w, p)
        F = (F + c * term) % p
    return F


def iter_tuples(f: HypersurfaceSpec, length: int, budget: int | None = None, chunk: int = 1 << 14):
    """Yield (G, F) blocks: G has shape (B, n, length), F the coefficients of f(G).

    Slow path used where a check needs the tuples themselves, not only a
    histogram of projected values.
    """
    p, n = f.p, f.n
    if length == 0:
        yield np.zeros((1, n, 0), dtype=np.int64), np.zeros((1, 1), dtype=np.int64)
        return
    total = p ** (n * length)
    check_budget(total, budget, f"enumeration of Poly_<{length}^{n} over F_{p}")
    size = p**length
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        vals = [(idx // size**i) % size for i in range(n)]
        G = np.stack([np.stack([(v // p**k) % p for k in range(length)], axis=1) for v in vals], axis=1)
        yield G, evaluate_batch(f, G)
