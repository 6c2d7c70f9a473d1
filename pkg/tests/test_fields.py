import pytest
import sympy
from hypothesis import given, strategies as st

from circlelab.errors import PreconditionError
from circlelab.fields import (FpPoly, PrimeField, crt_combine, factor_monic, is_irreducible, is_prime,
                              monic_polys, poly_divmod, poly_gcd, poly_inverse_mod, poly_xgcd, polys_below)

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def poly_pairs(draw, nonzero_b=True):
    p = draw(PRIMES)
    a = draw(st.lists(st.integers(0, p - 1), max_size=7))
    b = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=5))
    if nonzero_b and not any(b):
        b[-1] = 1
    return FpPoly(p, a), FpPoly(p, b)


def to_sympy(f: FpPoly):
    t = sympy.Symbol("t")
    return sympy.Poly(list(reversed(f.c)) or [0], t, modulus=f.p)


def from_sympy(p, g) -> FpPoly:
    return FpPoly(p, [int(c) % p for c in reversed(g.all_coeffs())])


def test_prime_field_rejects_composites():
    assert is_prime(5) and not is_prime(9)
    with pytest.raises(PreconditionError):
        PrimeField(4)


def test_inverse_and_squares():
    F = PrimeField(7)
    assert all(a * F.inv(a) % 7 == 1 for a in range(1, 7))
    assert [a for a in range(1, 7) if F.is_square(a)] == [1, 2, 4]


def test_divmod_examples():
    p = 3
    q, r = poly_divmod(FpPoly(p, [1, 0, 1]), FpPoly.t(p))
    assert (q, r) == (FpPoly.t(p), FpPoly.const(p, 1))
    a = FpPoly(p, [1, 2, 0, 1])  # t^3 + 2t + 1
    q, r = poly_divmod(a, FpPoly(p, [1, 0, 1]))
    assert q == FpPoly.t(p) and r == FpPoly(p, [1, 1])
    q, r = poly_divmod(a, FpPoly.const(p, 1))
    assert q == a and r.is_zero()


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(FpPoly(3, [1]), FpPoly(3, []))


@given(poly_pairs())
def test_divmod_matches_sympy(ab):
    a, b = ab
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.deg < b.deg
    sq, sr = sympy.div(to_sympy(a), to_sympy(b))
    assert from_sympy(a.p, sq) == q and from_sympy(a.p, sr) == r


@given(poly_pairs())
def test_xgcd_bezout(ab):
    a, b = ab
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert g == poly_gcd(a, b)
    assert g.is_monic()
    assert from_sympy(a.p, sympy.gcd(to_sympy(a), to_sympy(b)).monic()) == g


def test_crt_examples():
    p = 3
    t = FpPoly.t(p)
    g = crt_combine(FpPoly.const(p, 1), t, FpPoly.const(p, 2), FpPoly.linear(p, 1))
    assert g == FpPoly(p, [1, 1])
    assert g(0) == 1 and g(1) == 2
    assert crt_combine(FpPoly(p, []), t, FpPoly(p, []), FpPoly.linear(p, 1)).is_zero()


@given(st.data())
def test_crt_round_trip(data):
    p = 5
    l1 = data.draw(st.sampled_from([f for m in (1, 2, 3) for f in monic_polys(p, m)]))
    l2 = data.draw(st.sampled_from([f for m in (1, 2) for f in monic_polys(p, m) if poly_gcd(f, l1).deg == 0]))
    r1 = FpPoly(p, data.draw(st.lists(st.integers(0, 4), max_size=l1.deg)))
    r2 = FpPoly(p, data.draw(st.lists(st.integers(0, 4), max_size=l2.deg)))
    g = crt_combine(r1, l1, r2, l2)
    assert g % l1 == r1 % l1 and g % l2 == r2 % l2
    assert g.is_zero() or g.deg < l1.deg + l2.deg


def test_inverse_mod():
    p, m = 5, FpPoly(5, [2, 0, 1])
    for a in polys_below(p, 2):
        if not a.is_zero():
            assert (a * poly_inverse_mod(a, m)) % m == FpPoly.const(p, 1)


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (3, 3), (5, 2)])
def test_irreducible_count_matches_necklace_formula(p, m):
    expected = sum(sympy.mobius(m // k) * p**k for k in sympy.divisors(m)) // m
    assert sum(is_irreducible(f) for f in monic_polys(p, m)) == expected


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_factorization_recombines(cs):
    f = FpPoly(5, cs + [1])
    prod = FpPoly.const(5, 1)
    for g, e in factor_monic(f):
        assert is_irreducible(g) and g.is_monic()
        prod = prod * g**e
    assert prod == f


def test_taylor_expansion():
    p = 5
    f = FpPoly(p, [1, 2, 3])
    x = 2
    coeffs = f.taylor(x)
    shifted = sum((FpPoly.linear(p, x) ** k).scale(c) for k, c in enumerate(coeffs))
    assert shifted == f
    assert coeffs[0] == f(x)
