"""Dense Gaussian elimination over F_p on lists of Python ints."""

from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    A = [[x % p for x in r] for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                fac = A[i][c]
                A[i] = [(x - fac * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, p, ncols)[1])


def nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : A x = 0}; basis vector for free column f has x_f = 1,
    other free coordinates 0, so its last nonzero coordinate is f."""
    if not rows:
        return [[1 if j == f else 0 for j in range(ncols)] for f in range(ncols)]
    A, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][f] % p
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int, ncols: int):
    """One solution of A x = rhs (free variables set to 0), or None."""
    if not rows:
        return [0] * ncols
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    A, pivots = rref(aug, p, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = A[i][ncols]
    return x


def det(rows: Sequence[Sequence[int]], p: int) -> int:
    A = [[x % p for x in r] for r in rows]
    n = len(A)
    out = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            out = -out
        out = out * A[c][c] % p
        inv = pow(A[c][c], p - 2, p)
        for i in range(c + 1, n):
            if A[i][c]:
                fac = A[i][c] * inv % p
                A[i] = [(x - fac * y) % p for x, y in zip(A[i], A[c])]
    return out % p
