from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from circlelab import linalg


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    rows = [draw(st.lists(st.integers(0, p - 1), min_size=c, max_size=c)) for _ in range(r)]
    return p, rows, c


@given(matrices())
def test_rank_matches_sympy_over_gf(data):
    p, rows, c = data
    expected = DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), c), GF(p)).rank()
    assert linalg.rank(rows, p, c) == expected


@given(matrices())
def test_nullspace_vectors_are_kernel(data):
    p, rows, c = data
    basis = linalg.nullspace(rows, p, c)
    assert len(basis) == c - linalg.rank(rows, p, c)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)


@given(matrices(), st.data())
def test_solve_round_trip(data, draw):
    p, rows, c = data
    x = draw.draw(st.lists(st.integers(0, p - 1), min_size=c, max_size=c))
    rhs = [sum(a * b for a, b in zip(r, x)) % p for r in rows]
    sol = linalg.solve(rows, rhs, p, c)
    assert sol is not None
    assert [sum(a * b for a, b in zip(r, sol)) % p for r in rows] == rhs


def test_det_small():
    assert linalg.det([[1, 2], [3, 4]], 5) == (1 * 4 - 2 * 3) % 5
    assert linalg.det([[1, 1], [1, 1]], 3) == 0
