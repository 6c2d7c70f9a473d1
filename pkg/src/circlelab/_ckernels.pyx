# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernel; same contract as the numpy reference."""

import numpy as np
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free


def coefficient_histogram(int p, int n, int length, int64_t[:, ::1] exps, int64_t[::1] coeffs,
                          int64_t[:, ::1] proj, int64_t[:, :, ::1] table,
                          long long start=0, stop=None, bint zero_only=False):
    cdef long long size = p ** length
    cdef long long total = size ** n
    cdef long long stop_ = total if stop is None else stop
    cdef int K = proj.shape[0]
    cdef int width = proj.shape[1]
    cdef int M = exps.shape[0]
    cdef long long nkeys = 1 if zero_only else p ** K
    hist_arr = np.zeros(nkeys, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    if stop_ <= start:
        return hist_arr
    cdef int64_t *F = <int64_t *> malloc(width * sizeof(int64_t))
    cdef int64_t *tmp = <int64_t *> malloc(width * sizeof(int64_t))
    cdef int64_t *tmp2 = <int64_t *> malloc(width * sizeof(int64_t))
    cdef long long *vals = <long long *> malloc(n * sizeof(long long))
    cdef long long *pw = <long long *> malloc(K * sizeof(long long))
    cdef long long idx, rest, key, s
    cdef int i, j, k, m, r, a, cur_len, nlen, first, allzero
    cdef int step = length - 1
    if F == NULL or tmp == NULL or tmp2 == NULL or vals == NULL or pw == NULL:
        free(F); free(tmp); free(tmp2); free(vals); free(pw)
        raise MemoryError()
    try:
        rest = start
        for i in range(n):
            vals[i] = rest % size
            rest //= size
        pw[0] = 1 if K > 0 else 0
        for r in range(1, K):
            pw[r] = pw[r - 1] * p
        with nogil:
            for idx in range(start, stop_):
                for k in range(width):
                    F[k] = 0
                for m in range(M):
                    first = 1
                    cur_len = 0
                    for i in range(n):
                        a = <int> exps[m, i]
                        if a == 0:
                            continue
                        if first:
                            cur_len = a * step + 1
                            for k in range(cur_len):
                                tmp[k] = table[vals[i], a, k]
                            first = 0
                        else:
                            nlen = cur_len + a * step
                            for k in range(nlen):
                                tmp2[k] = 0
                            for j in range(cur_len):
                                if tmp[j] == 0:
                                    continue
                                for k in range(a * step + 1):
                                    tmp2[j + k] += tmp[j] * table[vals[i], a, k]
                            for k in range(nlen):
                                tmp[k] = tmp2[k] % p
                            cur_len = nlen
                    for k in range(cur_len):
                        F[k] += coeffs[m] * tmp[k]
                for k in range(width):
                    F[k] = F[k] % p
                key = 0
                allzero = 1
                for r in range(K):
                    s = 0
                    for k in range(width):
                        s += proj[r, k] * F[k]
                    s = s % p
                    if s != 0:
                        allzero = 0
                        if zero_only:
                            break
                    key += s * pw[r]
                if zero_only:
                    if allzero:
                        hist[0] += 1
                else:
                    hist[key] += 1
                i = 0
                while i < n:
                    vals[i] += 1
                    if vals[i] < size:
                        break
                    vals[i] = 0
                    i += 1
    finally:
        free(F); free(tmp); free(tmp2); free(vals); free(pw)
    return hist_arr
