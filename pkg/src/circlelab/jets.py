"""Jet spaces of the affine cone X = {f = 0}: symbolic classes and their point counts.

A class is an integer combination of monomials L^a B^b, where B stands for
[X] (the affine cone, origin included) and L for the affine line.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .circle import count_V, count_lambda
from .errors import PreconditionError, check_budget
from .hypersurface import HypersurfaceSpec
from .kernels import count_zero, evaluate_batch, iter_tuples, width
from .reports import CheckResult

MAX_B_DEGREE = 2


class GClass:
    """Sparse integer combination of L^a B^b with b in {0, 1, 2}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (a, b), c in dict(terms or {}).items():
            if not 0 <= b <= MAX_B_DEGREE:
                raise PreconditionError(f"B-degree {b} outside 0..{MAX_B_DEGREE}")
            if c:
                clean[(int(a), int(b))] = clean.get((int(a), int(b)), 0) + int(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def L(cls, a: int = 1) -> GClass:
        return cls({(a, 0): 1})

    @classmethod
    def B(cls) -> GClass:
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c: int) -> GClass:
        return cls({(0, 0): c})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GClass(out)

    __radd__ = __add__

    def __neg__(self):
        return GClass({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return GClass(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> GClass:
        """Multiply by L^k."""
        return GClass({(a + k, b): c for (a, b), c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GClass) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, L, B) -> Fraction:
        """The ring map L -> L, B -> B into the rationals."""
        L, B = Fraction(L), Fraction(B)
        return sum((c * L**a * B**b for (a, b), c in self.terms.items()), Fraction(0))

    def dimension(self, b_dim: int) -> int | None:
        """Largest a + b*b_dim over the support, reading B as a class of dimension b_dim."""
        if not self.terms:
            return None
        return max(a + b * b_dim for a, b in self.terms)

    def top_coefficient(self, b_dim: int) -> int:
        top = self.dimension(b_dim)
        return sum(c for (a, b), c in self.terms.items() if a + b * b_dim == top)

    def to_list(self) -> list[dict]:
        return [{"a": a, "b": b, "coeff": c} for (a, b), c in sorted(self.terms.items())]

    @classmethod
    def from_list(cls, items) -> GClass:
        return cls({(int(m["a"]), int(m["b"])): int(m["coeff"]) for m in items})

    def to_json(self) -> str:
        return json.dumps(self.to_list(), sort_keys=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            mono = "*".join(x for x in (f"L^{a}" if a else "", "B" if b == 1 else f"B^{b}" if b else "") if x)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _coerce(x) -> GClass:
    if isinstance(x, GClass):
        return x
    if isinstance(x, int):
        return GClass.const(x)
    raise TypeError(f"cannot combine GClass with {type(x).__name__}")


# recursion ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _base_increment(n: int, d: int, r: int) -> GClass:
    """Psi_r for 1 <= r <= d, read off from the strata with x_0 = 0."""
    if r < d:
        return GClass.L(r - n) * (GClass.L() - 1)
    return GClass.L(-(2 * n - d - 1)) * (GClass.B() - GClass.L(n - 1))


def jet_increment(n: int, d: int, N: int) -> GClass:
    """Psi_N = [L_N]/L^{(N+1)(n-1)} - [L_{N-1}]/L^{N(n-1)} for N >= 1.

    Writing N = qd + r, Psi_N = L^{-(n-d)q} Psi_r when r > 0 and
    L^{-(n-d)(q-1)} Psi_d when r = 0.
    """
    if N < 1:
        raise PreconditionError("increments start at N = 1")
    q, r = divmod(N, d)
    if r:
        return _base_increment(n, d, r).shift(-(n - d) * q)
    return _base_increment(n, d, d).shift(-(n - d) * (q - 1))


def jet_increment_closed(n: int, d: int, N: int) -> GClass:
    """The same increment from the closed form L^{N-n-n floor(N/d)} (L-1) or L (B - L^{n-1})."""
    base = N - n - n * (N // d)
    if N % d:
        return GClass.L(base) * (GClass.L() - 1)
    return GClass.L(base + 1) * (GClass.B() - GClass.L(n - 1))


def jet_class(n: int, d: int, N: int) -> GClass:
    """[L_N(X)] by unrolling the recursion down to [L_0] = B."""
    if N < 0:
        return GClass()
    acc = GClass.B().shift(1 - n)
    for k in range(1, N + 1):
        acc = acc + jet_increment(n, d, k)
    return acc.shift((N + 1) * (n - 1))


def pad_bounds_hold(n: int, d: int, N: int) -> bool:
    """Every correction term has dimension <= (N+1)(1-n/d), or N(1-n/d) when d | N."""
    dim = jet_increment_closed(n, d, N).dimension(n - 1)
    bound = Fraction(N, 1) * (1 - Fraction(n, d)) if N % d == 0 else (N + 1) * (1 - Fraction(n, d))
    return dim <= bound


def jet_count(f: HypersurfaceSpec, N: int, budget: int | None = None) -> int:
    """#{x_0 + ... + x_N t^N : f(x) = 0 mod t^{N+1}} by enumeration."""
    if N < 0:
        return 0
    length = N + 1
    proj = np.eye(length, width(f, length), dtype=np.int64)
    return count_zero(f, length, proj, budget)


def jet_recursion_check(f: HypersurfaceSpec, Nmax: int, budget: int | None = None) -> CheckResult:
    p, n, d = f.p, f.n, f.d
    B = f.affine_count()
    lhs, rhs = [], []
    for N in range(Nmax + 1):
        lhs.append(jet_class(n, d, N).evaluate(p, B))
        rhs.append(jet_count(f, N, budget))
    params = {"p": p, "n": n, "d": d, "f": f.label(), "Nmax": Nmax, "B": B}
    notes = [f"[L_{N}] = {jet_class(n, d, N)!r}" for N in range(min(Nmax, 2) + 1)]
    return CheckResult("jet_recursion", params, lhs, rhs, lhs == rhs, notes)


def _taylor_shift(G: np.ndarray, x: int, p: int) -> np.ndarray:
    """g'_k = sum_{j >= k} C(j, k) x^{j-k} g_j, so that g(t) = sum g'_k (t - x)^k."""
    length = G.shape[2]
    T = np.zeros((length, length), dtype=np.int64)
    for j in range(length):
        for k in range(j + 1):
            T[j, k] = comb(j, k) * pow(x, j - k, p) % p
    return G @ T % p


def lambda_jet_bijection_check(f: HypersurfaceSpec, N: int, x: int, budget: int | None = None) -> CheckResult:
    """The binomial substitution maps Lambda_N(f, x) injectively into L_{N-1}(X), with equal counts."""
    p, n = f.p, f.n
    if N < 1:
        raise PreconditionError("need N >= 1")
    x %= p
    # members of Lambda_N(f, x): f(g) vanishes to order N at x, read through the Taylor shift of f(g)
    images = set()
    members = 0
    in_jet = True
    for G, F in iter_tuples(f, N, budget):
        Fs = _taylor_shift(F[:, None, :], x, p)[:, 0, :N]
        mask = ~Fs.any(axis=1)
        members += int(mask.sum())
        Gp = _taylor_shift(G[mask], x, p)
        if Gp.shape[0]:
            img = evaluate_batch(f, Gp)[:, :N]
            in_jet &= not img.any()
            images.update(map(bytes, Gp.astype(np.int8).reshape(Gp.shape[0], -1)))
    target = jet_count(f, N - 1, budget)
    injective = len(images) == members
    ok = in_jet and injective and members == target
    params = {"p": p, "n": n, "d": f.d, "f": f.label(), "N": N, "x": x}
    notes = [f"image inside jet space: {in_jet}", f"injective: {injective}"]
    return CheckResult("lambda_jet_bijection", params, members, target, ok, notes)


def V_lambda_check(f: HypersurfaceSpec, e: int, gamma: int, budget: int | None = None) -> CheckResult:
    """#V_{d+gamma-1} = #Lambda_gamma(f, inf) p^{n(e+1-gamma)}."""
    p, n = f.p, f.n
    if not 1 <= gamma <= e + 1:
        raise PreconditionError("need 1 <= gamma <= e + 1")
    check_budget(p ** (n * (e + 1)), budget, "V count")
    V = count_V(f, e, gamma, "kernel", budget)
    lam = count_lambda(f, gamma, "inf", budget)
    rhs = lam * p ** (n * (e + 1 - gamma))
    params = {"p": p, "n": n, "d": f.d, "f": f.label(), "e": e, "gamma": gamma}
    return CheckResult("V_lambda", params, V, rhs, V == rhs, [f"#Lambda_gamma(f, inf) = {lam}"])
