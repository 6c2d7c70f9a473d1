"""Check suites: each returns a list of CheckResult for one hypersurface and parameter set."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import circle, hodge, jets, lattice, weyl
from .approx import RatApprox, in_Am, pade, pade_contract_holds, stratify_arcs
from .errors import PreconditionError
from .fields import FpPoly, monic_polys, poly_gcd
from .hypersurface import CircleParams, HypersurfaceSpec
from .laurent import TruncLaurent
from .reports import CheckResult


@dataclass
class SuiteParams:
    e: int = 1
    gamma: int | None = None
    delta: int | None = None
    Nmax: int = 3
    E: int = 1
    seed: int = 0
    samples: int = 20
    hodge_n: list = field(default_factory=lambda: [17, 20, 25])
    budget: int | None = None


# lattices -------------------------------------------------------------------

def lattice_random_checks(p: int, n: int, count: int, seed: int = 0, R: int = 1,
                          budget: int | None = None) -> list[CheckResult]:
    """nu against enumeration, det = sum of minima, dual minima, unimodular invariance."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        lat = lattice.random_lattice(rng, p, n, -1, 1)
        sig = lat.minima
        fast = lattice.nu(lat, R)
        slow = lattice.nu_bruteforce(lat, R, budget=budget)
        U = lattice.random_unimodular(rng, p, n, steps=3, deg=1)
        invariant = lat.matmul_right(U).minima == sig
        params = {"p": p, "n": n, "R": R, "instance": k, "seed": seed, "minima": list(sig)}
        ok = fast == slow
        out.append(CheckResult("nu_formula", params, fast, slow, ok))
        out.append(CheckResult("det_relation", params, lat.deg_det(), sum(sig), lattice.det_relation_holds(lat)))
        out.append(CheckResult("dual_minima", params, list(lattice.dual(lat).minima),
                               [-s for s in reversed(sig)], lattice.duality_holds(lat)))
        out.append(CheckResult("unimodular_invariance", params, list(lat.matmul_right(U).minima),
                               list(sig), invariant))
    return out


def shrink_random_checks(p: int, n: int, count: int, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        inst = lattice.random_shrink_instance(rng, p, n)
        s = rng.randrange(0, 3)
        lhs, rhs, ok = lattice.shrink_check(inst, s)
        params = {"p": p, "n": n, "a": inst.a, "b": inst.b, "s": s, "instance": k}
        ok &= lattice.self_dual_profile_holds(inst)
        out.append(CheckResult("shrink", params, lhs, rhs, ok))
    return out


def shrink_worked_case() -> list[CheckResult]:
    """n = 1, U = 0, a = 4, b = 1, s = 1 under both readings of the shrunk term."""
    inst = lattice.ShrinkInstance(3, [[{}]], 4, 1)
    lhs, rhs, ok = lattice.shrink_check(inst, 1)
    literal = lattice.double_shift_rhs(inst, 1)
    params = {"p": 3, "n": 1, "U": "0", "a": 4, "b": 1, "s": 1}
    return [
        CheckResult("shrink_worked", params, lhs, rhs, ok, ["shrunk term nu(L_{a-s,b+s}, 0)"]),
        CheckResult("shrink_worked_double_shift", params, lhs, literal, lhs <= literal,
                    ["shrunk term nu(L_{a-s,b+s}, -s)"]),
    ]


# approximation ---------------------------------------------------------------

def pade_random_checks(p: int, count: int, mmax: int = 6, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        m = rng.randint(1, mmax)
        b = [rng.randrange(p) for _ in range(2 * m)]
        alpha = TruncLaurent.from_b(p, b)
        ra = pade(alpha, m, m)
        if ra is None or not pade_contract_holds(alpha, m, ra, m):
            failures += 1
    params = {"p": p, "count": count, "mmax": mmax, "seed": seed}
    return CheckResult("pade_dirichlet", params, count - failures, count, failures == 0)


def am_chain_checks(p: int, d: int, e: int, samples: int, seed: int = 0) -> CheckResult:
    """A_0 subset A_1 subset ..., with A_m everything once m >= ceil((de+1)/2)."""
    rng = random.Random(seed)
    w = d * e + 1
    full_at = -(-w // 2)
    bad = 0
    for _ in range(samples):
        b = [rng.randrange(p) for _ in range(w)]
        chain = [in_Am(b, m, d, e, p) for m in range(w + 1)]
        monotone = all(not x or y for x, y in zip(chain, chain[1:]))
        bad += not (monotone and all(chain[full_at:]))
    params = {"p": p, "d": d, "e": e, "samples": samples, "full_at": full_at}
    return CheckResult("Am_chain", params, samples - bad, samples, bad == 0)


def arc_table_checks(p: int, d: int, e: int, gamma=None, delta=None, budget=None) -> CheckResult:
    table = stratify_arcs(p, d, e, gamma, delta, budget)
    sanity = table.dimension_sanity()
    ok = table.is_partition() and all(sanity.values())
    params = {"p": p, "d": d, "e": e, "gamma": table.gamma, "delta": table.delta}
    return CheckResult("arc_partition", params, len(table.entries), p ** (d * e + 1), ok,
                       [f"{k}: {v}" for k, v in sorted(sanity.items())])


# suites -----------------------------------------------------------------------

def _coprime_pairs(p: int, max_total: int):
    for d1 in range(1, max_total):
        for d2 in range(d1, max_total - d1 + 1):
            for l1 in monic_polys(p, d1):
                for l2 in monic_polys(p, d2):
                    if poly_gcd(l1, l2).deg == 0 and (d1 < d2 or l1.c <= l2.c):
                        yield l1, l2


def suite_orthogonality(f, sp):
    return [circle.orthogonality_check(f, sp.e, sp.budget)]


def suite_arcs(f, sp):
    cp = CircleParams(f.n, f.d, sp.e, sp.gamma, sp.delta)
    out = [arc_table_checks(f.p, f.d, sp.e, cp.gamma, cp.delta, sp.budget),
           circle.major_minor_check(f, sp.e, cp.gamma, cp.delta, sp.budget)]
    if cp.gamma >= 1:
        out.append(jets.V_lambda_check(f, sp.e, cp.gamma, sp.budget))
        out.append(circle.order_small_check(f, sp.e, cp.gamma, min(cp.delta, sp.e + 1 - cp.gamma),
                                            samples=sp.samples, seed=sp.seed))
    return out


def suite_singular_series(f, sp, max_total: int = 3, mmax: int = 3):
    out = [circle.s1_closed_form_check(f, sp.budget)]
    for l1, l2 in _coprime_pairs(f.p, max_total):
        out.append(circle.crt_mult_check(f, l1, l2, sp.budget))
    for m in range(1, mmax + 1):
        out.append(circle.euler_coeff_check(f, m, sp.budget))
    return out


def suite_local_density(f, sp):
    out = []
    for x in range(f.p):
        for N in range(1, sp.Nmax + 1):
            out.append(circle.telescoping_check(f, N, x, sp.budget))
    out.append(circle.density_check(f, 0, sp.Nmax, sp.budget))
    for N in range(1, min(sp.Nmax, 2) + 1):
        out.append(circle.lambda_place_check(f, N, sp.budget))
    for i in range(1, min(sp.Nmax, 2) + 1):
        out.append(circle.local_Ui_check(f, i, 0, sp.budget))
    return out


def suite_jets(f, sp):
    out = [jets.jet_recursion_check(f, sp.Nmax, sp.budget)]
    for x in range(f.p):
        out.append(jets.lambda_jet_bijection_check(f, 2, x, sp.budget))
    out.append(jets.V_lambda_check(f, sp.e, 1, sp.budget))
    return out


def suite_lattice(f, sp):
    return lattice_random_checks(f.p, 2, max(sp.samples, 20), sp.seed, budget=sp.budget)


def suite_shrink(f, sp):
    return shrink_random_checks(f.p, 2, max(sp.samples, 50), sp.seed) + shrink_worked_case()


def suite_approx(f, sp):
    return [pade_random_checks(f.p, 1000, 6, sp.seed),
            am_chain_checks(f.p, f.d, sp.e, 200, sp.seed)]


def example_rational(p: int) -> RatApprox:
    """alpha = 1/(t-1), theta = 0."""
    return RatApprox(FpPoly(p, [1]), FpPoly(p, [p - 1, 1]), TruncLaurent.zero(p))


def suite_weyl(f, sp):
    if f.p <= f.d:
        raise PreconditionError(f"Weyl systems need p > d (p={f.p}, d={f.d})")
    rng = random.Random(sp.seed)
    E = sp.E
    need = (f.d - 1) * (E - 1) + E
    out = []
    for _ in range(3):
        b = [rng.randrange(f.p) for _ in range(need)]
        out.append(weyl.weyl_id_check(f, E, b, sp.budget))
    out.append(weyl.diag_vanish_check(f, E, sp.budget))
    ra = example_rational(f.p)
    s = weyl.s_rational(ra.h2.deg, E, f.d)
    out.append(weyl.weyl_vanish_check(f, E, ra, s, sp.budget))
    return out


def suite_mor_lines(f, sp):
    return [circle.mor_lines_check(f, e, sp.budget) for e in range(1, min(sp.e, 2) + 1)]


def bounds_grid(d: int = 3, extra: int = 8, emax: int = 40) -> list[CheckResult]:
    lo = 2**d * (d - 1) + 1
    return [weyl.bounds_check(n, d, e, window=2 * d) for n in range(lo, lo + extra) for e in range(emax + 1)]


def suite_hodge(f, sp):
    out = [hodge.gs_pen_consistency(n) for n in sp.hodge_n]
    out.append(hodge.f1_window_check(25, 3))
    top = hodge.f1_hodge(25, 3, 42, 42)
    out.append(CheckResult("f1_top", {"n": 25, "d": 3, "p": 42, "q": 42}, top, 1, top == 1))
    grid = bounds_grid()
    out.append(CheckResult("jens_grid", {"d": 3, "cases": len(grid)}, sum(r.passed for r in grid),
                           len(grid), all(grid)))
    return out


SUITES = {
    "orthogonality": suite_orthogonality,
    "arcs": suite_arcs,
    "singular-series": suite_singular_series,
    "local-density": suite_local_density,
    "jets": suite_jets,
    "lattice": suite_lattice,
    "shrink": suite_shrink,
    "approx": suite_approx,
    "weyl": suite_weyl,
    "mor-lines": suite_mor_lines,
    "hodge": suite_hodge,
}

DESK_WEYL = HypersurfaceSpec.diagonal(5, 3, [1, 1])


def run_suite(name: str, f: HypersurfaceSpec, sp: SuiteParams) -> dict[str, list[CheckResult]]:
    """Results keyed by suite name; all-desk runs every suite, Weyl on a p > d cubic if needed."""
    if name == "all-desk":
        out = {}
        for key, fn in SUITES.items():
            target = f if key != "weyl" or f.p > f.d else DESK_WEYL
            out[key] = fn(target, sp)
        return out
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all-desk']}")
    return {name: SUITES[name](f, sp)}
