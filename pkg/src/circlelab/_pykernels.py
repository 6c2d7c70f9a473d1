"""Reference implementation of the enumeration kernel in numpy.

Used whenever the compiled extension is unavailable, and as the baseline
the benchmark compares against.
"""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 15


def power_table(p: int, length: int, d: int) -> np.ndarray:
    """table[v, a] = coefficients of g_v(t)^a, where g_v has base-p digits v.

    Shape (p**length, d + 1, d*(length-1) + 1).
    """
    size = p**length
    width = d * (length - 1) + 1
    digits = np.zeros((size, length), dtype=np.int64)
    v = np.arange(size, dtype=np.int64)
    for k in range(length):
        digits[:, k] = (v // p**k) % p
    table = np.zeros((size, d + 1, width), dtype=np.int64)
    table[:, 0, 0] = 1
    for a in range(1, d + 1):
        prev = table[:, a - 1, :]
        cur = np.zeros((size, width), dtype=np.int64)
        top = (a - 1) * (length - 1) + 1
        for i in range(length):
            cur[:, i : i + top] += digits[:, i : i + 1] * prev[:, :top]
        table[:, a, :] = cur % p
    return table


def _batch_conv(a: np.ndarray, b: np.ndarray, width: int, p: int) -> np.ndarray:
    out = np.zeros_like(a)
    for i in range(width):
        col = a[:, i : i + 1]
        if not col.any():
            continue
        out[:, i:] += col * b[:, : width - i]
    return out % p


def coefficient_histogram(p, n, length, exps, coeffs, proj, table, start=0, stop=None, zero_only=False):
    """Histogram of proj . coeffs(f(g)) mod p over g in a range of tuples.

    A tuple index encodes g_0 .. g_{n-1} in base p**length (g_0 least
    significant), each g_i by its base-p coefficient digits. Returns an
    int64 array over keys sum_r key_r p^r, or a length-1 array holding the
    number of g with key 0 when ``zero_only`` is set.
    """
    size = p**length
    total = size**n
    stop = total if stop is None else stop
    K, width = proj.shape
    weights = np.array([p**r for r in range(K)], dtype=np.int64)
    hist = np.zeros(1 if zero_only else p**K, dtype=np.int64)
    terms = []
    for m in range(exps.shape[0]):
        terms.append((int(coeffs[m]), [(i, int(exps[m, i])) for i in range(n) if exps[m, i]]))
    projT = np.ascontiguousarray(proj.T)
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        vals = [(idx // size**i) % size for i in range(n)]
        F = np.zeros((idx.size, width), dtype=np.int64)
        for c, factors in terms:
            i0, a0 = factors[0]
            term = table[vals[i0], a0, :]
            for i, a in factors[1:]:
                term = _batch_conv(term, table[vals[i], a, :], width, p)
            F = (F + c * term) % p
        keys = (F @ projT) % p
        if zero_only:
            hist[0] += int(np.count_nonzero(~keys.any(axis=1)))
        else:
            hist += np.bincount(keys @ weights, minlength=hist.size)
    return hist
