import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from circlelab import weyl as W
from circlelab.approx import RatApprox
from circlelab.errors import PreconditionError
from circlelab.fields import FpPoly
from circlelab.hypersurface import HypersurfaceSpec
from circlelab.laurent import TruncLaurent
from circlelab.suites import example_rational

CUBIC = HypersurfaceSpec.diagonal(5, 3, [1, 1])
MIXED = HypersurfaceSpec.from_dict({"p": 5, "n": 2, "d": 3, "monomials": [
    {"exps": [3, 0], "coeff": 1}, {"exps": [1, 2], "coeff": 2}, {"exps": [0, 3], "coeff": 3}]})


def residue_pairing(f, b, polys):
    """res(alpha f(g)) with alpha = sum b_r t^-r, by polynomial arithmetic."""
    val = FpPoly(f.p)
    for exps, c in f.monomials:
        term = FpPoly.const(f.p, c)
        for g, a in zip(polys, exps):
            term = term * g**a
        val = val + term
    return sum(b[k] * val.coeff(k) for k in range(min(len(b), (val.deg if not val.is_zero() else -1) + 1))) % f.p


def brute_force_V(f, b, E):
    """#y with the (d-1)-fold difference of G_alpha constant over every a in Poly_{<E}^n."""
    p, n, d = f.p, f.n, f.d
    polys = [tuple(FpPoly(p, cs) for cs in combo)
             for combo in itertools.product(itertools.product(range(p), repeat=E), repeat=n)]
    count = 0
    for ys in itertools.product(polys, repeat=d - 1):
        vals = set()
        for a in polys:
            D = 0
            for eps in itertools.product((0, 1), repeat=d - 1):
                g = [a[j] + sum((ys[r][j] for r in range(d - 1) if eps[r]), FpPoly(p)) for j in range(n)]
                D += (-1) ** sum(eps) * residue_pairing(f, b, g)
            vals.add(D % p)
            if len(vals) > 1:
                break
        count += len(vals) == 1
    return count


@pytest.mark.parametrize("f", [CUBIC, MIXED], ids=["diagonal", "mixed"])
@pytest.mark.parametrize("b", [(1, 2, 3), (4, 0, 1), (0, 0, 2)])
def test_V_against_brute_force_differencing(f, b):
    r = W.weyl_id_check(f, 1, list(b))
    assert r.passed
    assert r.rhs == brute_force_V(f, list(b), 1)


def test_alpha_zero_gives_everything():
    r = W.weyl_id_check(CUBIC, 1, [0, 0, 0])
    assert r.lhs == r.rhs == 5 ** 4


@pytest.mark.parametrize("p,d,n,E", [(5, 3, 2, 1), (5, 3, 2, 2), (3, 2, 2, 2)])
def test_identification_tuples(p, d, n, E):
    f = HypersurfaceSpec.diagonal(p, d, [1] * n)
    rng = np.random.default_rng(p * 100 + E)
    need = (d - 1) * (E - 1) + E
    for _ in range(2):
        assert W.weyl_id_check(f, E, [int(x) for x in rng.integers(0, p, need)]).passed
    assert W.diag_vanish_check(f, E).passed


def test_small_characteristic_rejected():
    with pytest.raises(PreconditionError):
        W.weyl_id_check(HypersurfaceSpec.diagonal(3, 3, [1, 1]), 1, [1, 1, 1])


def test_short_alpha_rejected():
    with pytest.raises(PreconditionError):
        W.weyl_id_check(CUBIC, 2, [1, 1])


@given(st.lists(st.integers(0, 4), min_size=2, max_size=2))
def test_psi_on_diagonal_is_scaled_gradient(h):
    for f in (CUBIC, MIXED):
        psi = f.multilinear().evaluate([h] * (f.d - 1))
        grad = f.gradient(h)
        assert psi == tuple(math.factorial(f.d - 1) * g % f.p for g in grad)


@given(st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_psi_symmetric_in_arguments(v):
    M = MIXED.multilinear()
    h1, h2 = v[:2], v[2:]
    assert M.evaluate([h1, h2]) == M.evaluate([h2, h1])


def test_psi_polys_matches_pointwise_evaluation():
    rng = np.random.default_rng(1)
    U = rng.integers(0, 5, size=(6, 2, 2, 2))
    P = W.psi_polys(MIXED.multilinear().tensor, U, 5)
    M = MIXED.multilinear()
    for k in range(6):
        for x in range(5):
            args = [[sum(int(U[k, r, i, j]) * x**i for i in range(2)) % 5 for j in range(2)] for r in range(2)]
            direct = M.evaluate(args)
            series = tuple(sum(int(P[k, j, i]) * x**i for i in range(P.shape[2])) % 5 for j in range(2))
            assert direct == series


def test_vanishing_on_rational_alpha():
    ra = example_rational(5)
    s = W.s_rational(ra.h2.deg, 2, 3)
    assert s == 1
    c1, c2 = W.shrink_conditions(1, ra.theta_ord(), s, 2, 3)
    assert c1 and c2
    r = W.weyl_vanish_check(CUBIC, 2, ra, s)
    assert r.passed and r.lhs == r.rhs == 81


def test_vanishing_conditions_fail_without_shrinking():
    ra = example_rational(5)
    assert W.shrink_conditions(1, ra.theta_ord(), 0, 2, 3) == (True, False)
    r = W.weyl_vanish_check(CUBIC, 2, ra, 0)
    assert r.passed and r.notes


def test_vanishing_trivial_when_s_at_least_E():
    r = W.weyl_vanish_check(CUBIC, 1, example_rational(5), 1)
    assert r.passed and r.lhs == 1 and any("shrunk set" in x for x in r.notes)


def test_vanishing_polynomial_free_case():
    theta = TruncLaurent.from_dict(5, {-6: 1}, lo=-12)
    theta = TruncLaurent(5, theta.lo, theta.c, exact_below=True)
    ra = RatApprox(FpPoly(5, []), FpPoly(5, [1]), theta)
    s = W.s_polynomial_free(-6, 2, 3)
    c1, c2 = W.shrink_conditions(0, -6, s, 2, 3)
    r = W.weyl_vanish_check(CUBIC, 2, ra, s)
    assert r.passed
    assert (c1 and c2) or r.notes


def test_undetermined_theta_rejected():
    ra = RatApprox(FpPoly(5, []), FpPoly(5, [1]), TruncLaurent.from_b(5, [0, 0]))
    with pytest.raises(PreconditionError):
        W.weyl_vanish_check(CUBIC, 1, ra, 0)


def test_diagonal_set_only_zero_for_smooth_cubic():
    r = W.diag_vanish_check(CUBIC, 2)
    assert r.passed and r.lhs == 1


def test_diagonal_set_negative_control(degenerate):
    r = W.diag_vanish_check(degenerate, 1)
    assert not r.passed and r.lhs == 5
    assert r.notes and "nonzero solution" in r.notes[0]


def test_bounds_examples():
    r = W.bounds_check(17, 3, 1)
    assert r.passed and r.lhs == 8 and r.rhs == 16
    r = W.bounds_check(17, 3, 40)
    assert r.passed and r.lhs == -2 and r.rhs == 6
    assert W.bounds_check(200, 4, 5).passed
    with pytest.raises(PreconditionError):
        W.bounds_check(16, 3, 1)


@given(st.integers(3, 5), st.integers(0, 60), st.integers(1, 30))
def test_bounds_grid(d, e, extra):
    n = 2**d * (d - 1) + extra
    r = W.bounds_check(n, d, e, window=4 * d)
    assert r.passed
    delta = (e + 1) // 2
    assert r.lhs == max(W.jens_lhs(m, n, d) for m in range(delta, delta + 300))
