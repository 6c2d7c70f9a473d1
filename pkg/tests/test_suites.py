import pytest

from circlelab.errors import PreconditionError
from circlelab.hypersurface import HypersurfaceSpec
from circlelab.suites import DESK_WEYL, SUITES, SuiteParams, run_suite, shrink_worked_case


def test_all_desk_is_union_of_suites(quad2):
    sp = SuiteParams(samples=5)
    everything = run_suite("all-desk", quad2, sp)
    assert set(everything) == set(SUITES)
    for name in ("lattice", "jets", "approx"):
        single = run_suite(name, quad2, sp)[name]
        assert [r.to_dict() for r in single] == [r.to_dict() for r in everything[name]]
    assert all(r.passed for rs in everything.values() for r in rs)


def test_weyl_runs_on_the_given_form_when_p_exceeds_d(quad2):
    out = run_suite("all-desk", quad2, SuiteParams(samples=5))
    assert all(r.params["p"] == 3 and r.params["d"] == 2 for r in out["weyl"])


def test_weyl_falls_back_and_singular_form_is_detected():
    # x1^3 + x2^3 = (x1 + x2)^3 in characteristic 3
    f = HypersurfaceSpec.diagonal(3, 3, [1, 1])
    out = run_suite("all-desk", f, SuiteParams(samples=5))
    assert all(r.params["p"] == DESK_WEYL.p for r in out["weyl"])
    assert not all(out["jets"]) and not all(out["local-density"])
    assert all(out["orthogonality"]) and all(out["singular-series"])


def test_unknown_suite(quad2):
    with pytest.raises(PreconditionError):
        run_suite("nonsense", quad2, SuiteParams())


def test_shrink_worked_case_records_both_readings():
    proven, literal = shrink_worked_case()
    assert (proven.lhs, proven.rhs, proven.passed) == (4, 5, True)
    assert (literal.lhs, literal.rhs, literal.passed) == (4, 4, True)


def test_suites_on_other_form():
    f = HypersurfaceSpec.diagonal(5, 2, [1, 2])
    for name in ("singular-series", "arcs", "mor-lines"):
        assert all(r.passed for r in run_suite(name, f, SuiteParams())[name])
