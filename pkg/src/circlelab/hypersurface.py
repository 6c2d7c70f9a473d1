"""Homogeneous forms over F_p and the data derived from them."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .fields import PrimeField


@dataclass(frozen=True)
class HypersurfaceSpec:
    """f = sum coeff * x^exps, homogeneous of degree d in n variables over F_p."""

    p: int
    n: int
    d: int
    monomials: tuple[tuple[tuple[int, ...], int], ...]
    smooth: str = "asserted"

    def __post_init__(self):
        PrimeField(self.p)
        if self.n < 1 or self.d < 1:
            raise PreconditionError("need n >= 1 and d >= 1")
        merged: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.monomials:
            exps = tuple(int(a) for a in exps)
            if len(exps) != self.n or any(a < 0 for a in exps):
                raise PreconditionError(f"bad exponent vector {exps} for n={self.n}")
            if sum(exps) != self.d:
                raise PreconditionError(f"monomial {exps} is not of degree {self.d}")
            merged[exps] = (merged.get(exps, 0) + int(coeff)) % self.p
        clean = tuple(sorted((e, c) for e, c in merged.items() if c))
        if not clean:
            raise PreconditionError("the zero form is not a hypersurface")
        object.__setattr__(self, "monomials", clean)
        if self.smooth not in ("diagonal", "asserted"):
            raise PreconditionError(f"smooth must be 'diagonal' or 'asserted', got {self.smooth!r}")
        if self.smooth == "diagonal" and not self.is_diagonal_smooth():
            raise PreconditionError("form is not a smooth diagonal form (all x_i^d present, p does not divide d)")

    @classmethod
    def diagonal(cls, p: int, d: int, coeffs: Sequence[int]) -> HypersurfaceSpec:
        n = len(coeffs)
        monos = []
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = d
            monos.append((tuple(e), c))
        smooth = "diagonal" if d % p and all(c % p for c in coeffs) else "asserted"
        return cls(p, n, d, tuple(monos), smooth)

    @classmethod
    def from_dict(cls, data: dict) -> HypersurfaceSpec:
        try:
            monos = tuple((tuple(m["exps"]), int(m["coeff"])) for m in data["monomials"])
            return cls(int(data["p"]), int(data["n"]), int(data["d"]), monos, data.get("smooth", "asserted"))
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed hypersurface description: {exc}") from exc

    @classmethod
    def from_json(cls, path: str | Path) -> HypersurfaceSpec:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d": self.d,
            "monomials": [{"exps": list(e), "coeff": c} for e, c in self.monomials],
            "smooth": self.smooth,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def label(self) -> str:
        terms = []
        for exps, c in self.monomials:
            mono = "*".join(f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}" for i, a in enumerate(exps) if a)
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) + f" over F_{self.p}"

    def is_diagonal_smooth(self) -> bool:
        if self.d % self.p == 0:
            return False
        seen = set()
        for exps, c in self.monomials:
            nz = [i for i, a in enumerate(exps) if a]
            if len(nz) != 1:
                return False
            seen.add(nz[0])
        return len(seen) == self.n

    # evaluation
    def exps_array(self) -> np.ndarray:
        return np.array([e for e, _ in self.monomials], dtype=np.int64).reshape(-1, self.n)

    def coeffs_array(self) -> np.ndarray:
        return np.array([c for _, c in self.monomials], dtype=np.int64)

    def __call__(self, x: Sequence[int]) -> int:
        total = 0
        for exps, c in self.monomials:
            term = c
            for xi, a in zip(x, exps):
                if a:
                    term = term * pow(xi, a, self.p)
            total += term
        return total % self.p

    def gradient(self, x: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.n
        for exps, c in self.monomials:
            for j, aj in enumerate(exps):
                if not aj:
                    continue
                term = c * aj
                for i, (xi, a) in enumerate(zip(x, exps)):
                    e = a - 1 if i == j else a
                    if e:
                        term *= pow(xi, e, self.p)
                out[j] += term
        return tuple(v % self.p for v in out)

    def affine_count(self) -> int:
        """#X(F_p): zeros of f in F_p^n including the origin."""
        pts = np.array(list(itertools.product(range(self.p), repeat=self.n)), dtype=np.int64)
        return int(np.count_nonzero(evaluate_points(self, pts) == 0))

    def projective_count(self) -> int:
        """#X~(F_p) = (#X - 1)/(p - 1)."""
        return (self.affine_count() - 1) // (self.p - 1)

    def singular_points_lint(self, max_ext: int = 2) -> list[tuple]:
        """Search F_p and F_{p^2} for nonzero common zeros of f and its gradient.

        A heuristic: finding none does not prove smoothness.
        """
        found = []
        for x in itertools.product(range(self.p), repeat=self.n):
            if any(x) and self(x) == 0 and not any(self.gradient(x)):
                found.append(("F_p", x))
        if max_ext >= 2 and self.p ** (2 * self.n) <= 10**5:
            found.extend(("F_p^2", x) for x in _singular_points_quadratic(self))
        return found

    def multilinear(self) -> MultilinearSystem:
        return MultilinearSystem.from_form(self)


def evaluate_points(f: HypersurfaceSpec, pts: np.ndarray) -> np.ndarray:
    """f evaluated at the rows of an integer array, reduced mod p."""
    p = f.p
    acc = np.zeros(pts.shape[0], dtype=np.int64)
    for exps, c in f.monomials:
        term = np.full(pts.shape[0], c, dtype=np.int64)
        for i, a in enumerate(exps):
            for _ in range(a):
                term = term * pts[:, i] % p
        acc = (acc + term) % p
    return acc


def _quadratic_extension(p: int) -> tuple[int, int]:
    """(r0, r1) such that w^2 = r0 + r1 w defines F_{p^2}."""
    for r1 in range(p):
        for r0 in range(p):
            # x^2 - r1 x - r0 irreducible iff it has no root
            if all((x * x - r1 * x - r0) % p for x in range(p)):
                return r0, r1
    raise AssertionError("no irreducible quadratic found")


def _singular_points_quadratic(f: HypersurfaceSpec) -> list[tuple]:
    p, n = f.p, f.n
    r0, r1 = _quadratic_extension(p)

    def mul(x, y):
        a, b = x
        c, e = y
        # (a + b w)(c + e w) = ac + (ae + bc) w + be (r0 + r1 w)
        return ((a * c + b * e * r0) % p, (a * e + b * c + b * e * r1) % p)

    def power(x, k):
        out = (1, 0)
        for _ in range(k):
            out = mul(out, x)
        return out

    def poly_value(x, monos):
        tot = (0, 0)
        for c, exps in monos:
            term = (c % p, 0)
            for xi, a in zip(x, exps):
                if a:
                    term = mul(term, power(xi, a))
            tot = ((tot[0] + term[0]) % p, (tot[1] + term[1]) % p)
        return tot

    base = [(c, e) for e, c in f.monomials]
    grads = []
    for j in range(n):
        g = []
        for c, e in base:
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                g.append((c * e[j], tuple(e2)))
        grads.append(g)
    elems = [(a, b) for a in range(p) for b in range(p)]
    out = []
    for x in itertools.product(elems, repeat=n):
        if all(xi[1] == 0 for xi in x):
            continue  # F_p points are scanned separately
        if poly_value(x, base) != (0, 0):
            continue
        if all(poly_value(x, g) == (0, 0) for g in grads):
            out.append(x)
    return out


@dataclass(frozen=True)
class MultilinearSystem:
    """The forms Psi_j(h^(1), ..., h^(d-1)) = d! sum c_{j_1..j_{d-1} j} h_{j_1} ... h_{j_{d-1}}.

    ``tensor`` has shape (n,)*d; its last index is j. Entries are already
    multiplied by d!, which keeps them integral in every characteristic.
    """

    p: int
    n: int
    d: int
    tensor: np.ndarray = field(compare=False)

    @classmethod
    def from_form(cls, f: HypersurfaceSpec) -> MultilinearSystem:
        n, d, p = f.n, f.d, f.p
        tens = np.zeros((n,) * d, dtype=np.int64)
        coeff = dict(f.monomials)
        for idx in itertools.product(range(n), repeat=d):
            exps = [0] * n
            for i in idx:
                exps[i] += 1
            c = coeff.get(tuple(exps), 0)
            if c:
                # d! c_j with c_j = coeff * prod(a_i!) / d!
                tens[idx] = c * math.prod(math.factorial(a) for a in exps) % p
        return cls(p, n, d, tens)

    def symmetric_tensor(self) -> np.ndarray:
        """c_j itself, available when d! is invertible mod p."""
        if self.p <= self.d:
            raise PreconditionError(f"d! is not invertible modulo p={self.p} for d={self.d}")
        inv = pow(math.factorial(self.d), self.p - 2, self.p)
        return self.tensor * inv % self.p

    def evaluate(self, args: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Psi_j at vectors h^(1), ..., h^(d-1) in F_p^n."""
        if len(args) != self.d - 1:
            raise PreconditionError(f"need {self.d - 1} vector arguments")
        t = self.tensor
        for h in args:
            t = np.tensordot(np.asarray(h, dtype=np.int64), t, axes=([0], [0])) % self.p
        return tuple(int(v) for v in np.atleast_1d(t))


def nu_tilde(n: int, d: int) -> Fraction:
    return Fraction(n - 2**d * (d - 1), 2 ** (d - 2)) if d >= 2 else Fraction(n)


@dataclass(frozen=True)
class CircleParams:
    """Arc parameters attached to a degree bound e for a form in n variables of degree d."""

    n: int
    d: int
    e: int
    gamma: int | None = None
    delta: int | None = None

    def __post_init__(self):
        if self.e < 0:
            raise PreconditionError("degree bound e must be nonnegative")
        if self.gamma is None:
            object.__setattr__(self, "gamma", -(-(self.e + 1) // 2))
        if self.delta is None:
            object.__setattr__(self, "delta", (self.e + 1) // 2)
        if self.gamma < 0 or self.delta < 0:
            raise PreconditionError("gamma and delta must be nonnegative")
        if self.delta + self.gamma > self.e + 1:
            raise PreconditionError("need delta + gamma <= e + 1 for the major arc description")

    @property
    def mu(self) -> int:
        return (self.e + 1) * self.n - (self.d * self.e + 1)

    @property
    def nu_tilde(self) -> Fraction:
        return nu_tilde(self.n, self.d)

    @property
    def m0(self) -> int:
        return -(-(self.d * self.e + 1) // 2)

    @property
    def width(self) -> int:
        """Number of coefficients b_1 .. b_{de+1} of alpha."""
        return self.d * self.e + 1
