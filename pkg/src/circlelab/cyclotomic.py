"""Exact cyclotomic integers in Z[zeta_p] and linear character sums."""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import PreconditionError


class CycSum:
    """Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2).

    zeta^(p-1) is eliminated with 1 + zeta + ... + zeta^(p-1) = 0, so two
    elements are equal exactly when their coordinates agree.
    """

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Sequence[int]):
        if len(coords) != p - 1:
            raise PreconditionError(f"expected {p - 1} coordinates, got {len(coords)}")
        self.p = p
        self.coords = tuple(int(x) for x in coords)

    @classmethod
    def from_int(cls, p: int, n: int) -> CycSum:
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p: int, k: int) -> CycSum:
        w = [0] * p
        w[k % p] = 1
        return cls.from_weights(p, w)

    @classmethod
    def from_weights(cls, p: int, weights: Sequence[int]) -> CycSum:
        """The element sum_c weights[c] zeta^c."""
        top = int(weights[p - 1])
        return cls(p, [int(weights[k]) - top for k in range(p - 1)])

    def weights(self) -> list[int]:
        return list(self.coords) + [0]

    def _other(self, other) -> CycSum:
        if isinstance(other, int):
            return CycSum.from_int(self.p, other)
        if not isinstance(other, CycSum) or other.p != self.p:
            raise PreconditionError("cyclotomic elements of different conductors")
        return other

    def __add__(self, other):
        o = self._other(other)
        return CycSum(self.p, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycSum(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycSum(self.p, [a * other for a in self.coords])
        o = self._other(other)
        p = self.p
        w = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        w[(i + j) % p] += a * b
        return CycSum.from_weights(p, w)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycSum:
        out = CycSum.from_int(self.p, 1)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> CycSum:
        """Image under zeta -> zeta^-1."""
        w = [0] * self.p
        for k, a in enumerate(self.coords):
            w[(-k) % self.p] += a
        return CycSum.from_weights(self.p, w)

    def galois(self, a: int) -> CycSum:
        """Image under zeta -> zeta^a for a coprime to p."""
        if a % self.p == 0:
            raise PreconditionError("Galois twist needs a unit")
        w = [0] * self.p
        for k, x in enumerate(self.coords):
            w[(a * k) % self.p] += x
        return CycSum.from_weights(self.p, w)

    def is_integer(self) -> bool:
        return not any(self.coords[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_integer() and self.coords[0] == other
        return isinstance(other, CycSum) and other.p == self.p and other.coords == self.coords

    def __hash__(self):
        if self.is_integer():
            return hash(self.coords[0])
        return hash((self.p, self.coords))

    def __repr__(self):
        if self.is_integer():
            return f"CycSum({self.coords[0]})"
        return f"CycSum(p={self.p}, {list(self.coords)})"

    def __str__(self):
        if self.is_integer():
            return str(self.coords[0])
        parts = [f"{a}*z^{k}" if k else str(a) for k, a in enumerate(self.coords) if a]
        return " + ".join(parts)


def char_sum_linear(dim: int, form: Sequence[int], p: int, enumerate_check: bool = False) -> CycSum:
    """sum over x in F_p^dim of zeta^(form . x).

    Closed form: p^dim if the form vanishes, 0 otherwise. With
    ``enumerate_check`` the full sum is also enumerated and compared.
    """
    if len(form) != dim:
        raise PreconditionError(f"form has {len(form)} coefficients, expected {dim}")
    closed = CycSum.from_int(p, p**dim if all(a % p == 0 for a in form) else 0)
    if enumerate_check:
        w = [0] * p
        for x in itertools.product(range(p), repeat=dim):
            w[sum(a * b for a, b in zip(form, x)) % p] += 1
        brute = CycSum.from_weights(p, w)
        if brute != closed:
            raise AssertionError(f"linear character sum mismatch: {brute} vs {closed}")
    return closed
