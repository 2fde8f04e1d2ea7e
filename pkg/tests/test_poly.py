from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wzsc.poly import (
    K,
    N,
    NotSplitOverRationals,
    Poly,
    RationalFunction,
    content_normalize,
    divexact,
    divides,
    equal_up_to_scalar,
    poly_gcd,
    split_linear_factors,
)

small = st.integers(-6, 6)


@st.composite
def polys(draw, max_deg=2):
    terms = {}
    for i in range(max_deg + 1):
        for j in range(max_deg + 1 - i):
            c = draw(small)
            if c:
                terms[(i, j)] = c
    return Poly(terms)


def test_str_and_evaluation():
    p = 4 * N**2 * K - 3 * K + Fraction(1, 2)
    assert str(p) == "4*n^2*k - 3*k + 1/2"
    assert p(2, 1) == Fraction(27, 2)


def test_shift_matches_substitution():
    p = N**3 * K + 2 * N * K**2 - 5
    assert p.shift("n", 2) == p.subs("n", N + 2)
    assert p.shift("k", -1)(3, 4) == p(3, 3)


def test_divexact_and_inexact():
    a = (N + K) * (2 * N - K + 1)
    assert divexact(a, N + K) == 2 * N - K + 1
    with pytest.raises(ValueError):
        divexact(a, N + 2)


def test_gcd_is_monic_common_factor():
    g = poly_gcd(6 * (N + K) * (N - 1), 4 * (N + K) * (K + 3))
    assert g == N + K


def test_rational_function_reduces():
    r = RationalFunction((N + 1) * (N - K), 3 * (N - K))
    assert r == RationalFunction(N + 1, 3)
    assert r.is_polynomial()
    assert RationalFunction(1, N) + RationalFunction(1, N + 1) == RationalFunction(2 * N + 1, N * (N + 1))


def test_split_linear_factors_examples():
    fac = split_linear_factors(-(4 * K + 1) * (2 * K + 1) ** 2)
    assert fac.constant == -1
    assert fac.multiplicities() == {(4, 1): 1, (2, 1): 2}
    assert fac.expand() == -(4 * K + 1) * (2 * K + 1) ** 2
    with pytest.raises(NotSplitOverRationals):
        split_linear_factors(K**2 + 1)


def test_split_handles_zero_roots_and_constants():
    fac = split_linear_factors(6 * K**2 * (3 * K - 2))
    assert fac.expand() == 6 * K**2 * (3 * K - 2)
    assert split_linear_factors(Poly.const(-16)).factors == ()


def test_content_normalize_fixes_sign_and_scale():
    a = content_normalize([-2 * K - 2, Poly.const(-4)])
    assert a == [K + 1, Poly.const(2)]
    assert equal_up_to_scalar([K + 1, Poly.const(2)], [-3 * K - 3, Poly.const(-6)])


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_gcd_divides_both(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    g = poly_gcd(a * c, b * c)
    assert divides(g, a * c) and divides(g, b * c)
    assert divides(c, g)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 5), st.integers(-7, 7)), max_size=4), st.integers(-9, 9).filter(bool))
def test_split_round_trips(factors, c):
    p = Poly.const(c)
    for m, b in factors:
        p = p * (m * K + b)
    assert split_linear_factors(p).expand() == p


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(-3, 3), st.integers(-3, 3))
def test_shift_composes(p, i, j):
    assert p.shift("n", i).shift("n", j) == p.shift("n", i + j)
