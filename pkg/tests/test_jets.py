from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlelab import jets as J
from circlelab.errors import PreconditionError
from circlelab.hypersurface import HypersurfaceSpec

L, B = J.GClass.L, J.GClass.B


def test_jet_counts_golden(quad3):
    assert [J.jet_count(quad3, N) for N in range(4)] == [9, 99, 891, 8505]
    assert J.jet_count(quad3, -1) == 0
    assert J.jet_count(quad3, 0) == quad3.affine_count()


def test_jet_counts_other_instances(quad2, cubic2):
    assert [J.jet_count(quad2, N) for N in range(4)] == [1, 9, 9, 81]
    assert [J.jet_count(cubic2, N) for N in range(4)] == [5, 45, 725, 3625]


def test_first_jet_class_quadric():
    n = 3
    expected = L(n - 1) * B() + L(n - 1) * (L() - 1)
    assert J.jet_class(n, 2, 1) == expected


@pytest.mark.parametrize("n,d", [(4, 3), (5, 3), (6, 4)])
def test_first_jet_class_keeps_B_for_higher_degree(n, d):
    # [L_1] = L^{n-1}(B + L - 1) for every d; the d | N branch only enters at N = d
    assert J.jet_class(n, d, 1) == L(n - 1) * (B() + L() - 1)


@pytest.mark.parametrize("n,d", [(3, 2), (4, 3), (7, 3)])
def test_degree_d_jet_contains_correction(n, d):
    term = L((d + 1) * (n - 1) - (2 * n - d - 1)) * (B() - L(n - 1))
    diff = J.jet_class(n, d, d) - J.jet_class(n, d, d - 1).shift(n - 1)
    assert diff == term


@given(st.integers(2, 8), st.integers(2, 5), st.integers(1, 20))
def test_recursive_and_closed_increments_agree(n, d, N):
    assert J.jet_increment(n, d, N) == J.jet_increment_closed(n, d, N)


@given(st.integers(2, 8), st.integers(2, 5), st.integers(1, 12))
def test_unrolled_class_is_telescoping_sum(n, d, N):
    lhs = J.jet_class(n, d, N).shift(-(N + 1) * (n - 1)) - J.jet_class(n, d, N - 1).shift(-N * (n - 1))
    assert lhs == J.jet_increment(n, d, N)


@given(st.integers(2, 6), st.integers(1, 12))
def test_top_monomial_for_n_greater_than_d(d, N):
    n = d + 1 + N % 3
    cls = J.jet_class(n, d, N)
    top = (n - 1) * (N + 1)
    assert cls.dimension(n - 1) == top
    # B counts with dimension n - 1, so the top class is L^{N(n-1)} B
    assert cls.top_coefficient(n - 1) == 1
    assert cls.terms.get((N * (n - 1), 1)) == 1


@given(st.integers(4, 9), st.integers(2, 3), st.integers(1, 15))
def test_pad_bounds(n, d, N):
    if n > d:
        assert J.pad_bounds_hold(n, d, N)


@pytest.mark.parametrize("name", ["quad2", "quad3", "cubic2"])
def test_recursion_against_enumeration(name, request):
    f = request.getfixturevalue(name)
    r = J.jet_recursion_check(f, 3)
    assert r.passed and r.lhs == r.rhs


def test_count_normalization_bounded(quad3):
    ratios = [Fraction(J.jet_count(quad3, N), 3 ** (2 * (N + 1))) for N in range(4)]
    assert all(0 < x <= 2 for x in ratios)


@pytest.mark.parametrize("x", [0, 1, 2])
def test_lambda_jet_bijection(quad2, x):
    assert J.lambda_jet_bijection_check(quad2, 2, x).passed


def test_lambda_jet_bijection_cubic(cubic2):
    assert J.lambda_jet_bijection_check(cubic2, 2, 3).passed


def test_bijection_needs_positive_N(quad2):
    with pytest.raises(PreconditionError):
        J.lambda_jet_bijection_check(quad2, 0, 0)


def test_V_lambda(quad2, cubic2):
    r = J.V_lambda_check(quad2, 1, 1)
    assert r.passed and r.lhs == 9
    assert J.V_lambda_check(cubic2, 1, 1).passed
    assert J.V_lambda_check(quad2, 1, 2).passed


classes = st.builds(J.GClass, st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(0, 1)),
                                               st.integers(-3, 3), max_size=4))


@given(classes, classes, st.integers(2, 7), st.integers(0, 50))
def test_evaluation_is_a_ring_map(a, b, Lv, Bv):
    assert (a * b).evaluate(Lv, Bv) == a.evaluate(Lv, Bv) * b.evaluate(Lv, Bv)
    assert (a + b).evaluate(Lv, Bv) == a.evaluate(Lv, Bv) + b.evaluate(Lv, Bv)


@given(classes)
def test_serialization_round_trip(a):
    assert J.GClass.from_list(a.to_list()) == a


def test_B_degree_cap():
    with pytest.raises(PreconditionError):
        B() * B() * B()


def test_repr():
    assert repr(L(2) * B() - 1) == "1*L^2*B + -1"
    assert repr(J.GClass()) == "0"
