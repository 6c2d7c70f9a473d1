import random

import pytest
from hypothesis import given, strategies as st

from circlelab import lattice as L
from circlelab.errors import PreconditionError
from circlelab.fields import FpPoly


def test_minima_examples():
    assert L.TLattice.identity(3, 2).minima == (0, 0)
    assert L.TLattice.diagonal(3, [-1, 1]).minima == (-1, 1)


def test_nu_examples():
    std = L.TLattice.identity(3, 2)
    assert [L.nu(std, R) for R in (1, 2, 3)] == [2, 4, 6]
    assert L.nu_bruteforce(std, 2) == 4
    d = L.TLattice.diagonal(3, [-1, 1])
    assert L.nu(d, 1) == 2 == L.nu_bruteforce(d, 1)
    assert L.nu(d, -1) == 0


def test_dual_of_diagonal():
    dd = L.dual(L.TLattice.diagonal(3, [-1, 1]))
    assert dd.minima == (-1, 1)
    assert L.duality_holds(L.TLattice.diagonal(3, [-1, 1]))


def test_singular_basis_rejected():
    with pytest.raises(PreconditionError):
        L.TLattice(3, [[{0: 1}, {0: 1}], [{0: 1}, {0: 1}]])


def test_degree_cap_guard():
    lat = L.TLattice.diagonal(3, [-1, 1])
    with pytest.raises(PreconditionError):
        L.nu_bruteforce(lat, 1, degree_cap=L.required_degree_cap(lat, 1) - 1)


@st.composite
def lattices(draw):
    p = draw(st.sampled_from([3, 5]))
    n = draw(st.integers(1, 3 if p == 3 else 2))
    return L.random_lattice(random.Random(draw(st.integers(0, 10**6))), p, n, -1, 1)


@given(lattices())
def test_det_and_dual_relations(lat):
    assert sum(lat.minima) == lat.deg_det()
    assert L.duality_holds(lat)
    assert L.dual(L.dual(lat)).minima == lat.minima


@given(lattices(), st.integers(-1, 2))
def test_nu_formula_against_enumeration(lat, R):
    if lat.n == 3 and R == 2:
        R = 1  # keeps the enumeration small
    assert L.nu(lat, R) == L.nu_bruteforce(lat, R)


@given(lattices(), st.integers(0, 10**6))
def test_minima_invariant_under_unimodular_change(lat, seed):
    U = L.random_unimodular(random.Random(seed), lat.p, lat.n, steps=3, deg=1)
    assert lat.matmul_right(U).minima == lat.minima


@given(lattices())
def test_normalized_basis_is_diagonally_dominant(lat):
    red = lat.reduce()
    norm = red.normalized()
    for i in range(lat.n):
        col = [r[i] for r in norm]
        degs = [max(e) if e else None for e in col]
        assert degs[i] == red.minima[i]
        assert all(d is None or d < degs[i] for k, d in enumerate(degs) if k != i)


@given(lattices())
def test_json_round_trip(lat):
    back = L.TLattice.from_json(lat.to_json())
    assert back.entries == lat.entries


def test_zero_U_profile():
    for a, b in [(1, 1), (2, 3), (4, 1)]:
        inst = L.ShrinkInstance(3, (({}, {}), ({}, {})), a, b)
        assert L.lattice_ab(inst).minima == (-a, -a, b, b)


def test_one_by_one_profile_and_enumeration():
    inst = L.ShrinkInstance(3, (({-1: 1},),), 1, 1)
    lat = L.lattice_ab(inst)
    assert L.nu(lat, 0) == L.nu_bruteforce(lat, 0)
    assert L.self_dual_profile_holds(inst)


def test_shrink_worked_case():
    inst = L.ShrinkInstance(3, (({},),), 4, 1)
    assert L.shrink_check(inst, 1) == (4, 5, True)
    # the double-shift reading reaches equality here
    assert L.double_shift_rhs(inst, 1) == 4


def test_double_shift_reading_fails_on_counterexample():
    inst = L.ShrinkInstance(3, (({},),), 4, 3)
    lhs, rhs, ok = L.shrink_check(inst, 1)
    assert ok and lhs == 4
    assert L.double_shift_rhs(inst, 1) == 3 < lhs


def test_shrink_trivial_when_no_shift():
    inst = L.ShrinkInstance(3, (({0: 1},),), 1, 2)
    lhs, rhs, ok = L.shrink_check(inst, 0)
    assert lhs == rhs and ok


@given(st.integers(0, 10**6), st.sampled_from([1, 2]), st.integers(0, 3))
def test_shrink_inequality_random(seed, n, s):
    inst = L.random_shrink_instance(random.Random(seed), 3, n)
    lhs, rhs, ok = L.shrink_check(inst, s)
    assert ok
    assert L.self_dual_profile_holds(inst)


@given(st.integers(0, 10**6))
def test_small_solutions_match_lattice_count(seed):
    inst = L.random_shrink_instance(random.Random(seed), 3, 1)
    if inst.a > 0:
        assert L.small_solution_dim(inst) == L.nu(L.lattice_ab(inst), 0)


def test_bareiss_matches_cofactor_expansion():
    p = 5
    P = [[FpPoly(p, [1, 2]), FpPoly(p, [0, 1])], [FpPoly(p, [3]), FpPoly(p, [1, 0, 1])]]
    assert L.bareiss_det(P, p) == P[0][0] * P[1][1] - P[0][1] * P[1][0]


def test_sweep_csv():
    text = L.shrink_sweep_csv([(4, 1, 1, 4, 5, True)])
    assert text == "a,b,s,lhs,rhs,holds\n4,1,1,4,5,true\n"
