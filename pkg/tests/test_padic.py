import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wzsc.exact import NotPadicInteger, PadicResidue, residue_mod
from wzsc.padic import (
    a0,
    a0_parity_holds,
    binomial_expansions_hold,
    g_at_zero_identities,
    gamma_p,
    gamma_p_naive,
    gk_expansion,
    gk_extract,
    gk_finite_difference,
    gk_identities,
    half_quotient_holds,
    half_square_holds,
    mod_trick_holds,
    pochhammer_gamma_identities,
    ratio_identity_holds,
    reflection_holds,
    shifted_ratio_holds,
    forward_expansion_holds,
    two_thirds_sign,
)

SMALL_PRIMES = [5, 7, 11, 13]
ODD_PRIMES_50 = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
zp = st.builds(Fraction, st.integers(-400, 400), st.sampled_from([1, 2, 3, 4, 6, 8, 9]))


def test_a0_examples():
    assert a0(Fraction(2, 3), 7) == 3
    assert a0(1, 11) == 1
    assert a0(0, 5) == 5
    assert a0(Fraction(3, 4), 13) == 4
    with pytest.raises(NotPadicInteger):
        a0(Fraction(1, 7), 7)


def test_gamma_p_special_values():
    for p in (3, 5, 7):
        for N in (1, 2, 3):
            assert gamma_p(0, p, N).value == 1
            assert gamma_p(1, p, N) == -1
    assert gamma_p(Fraction(1, 2), 5, 2) ** 2 == -1
    # only the residue mod 3 enters the p = 3 boundary case of H.2
    assert (gamma_p(Fraction(1, 4), 3, 1) ** 4).value == 1
    assert (gamma_p(Fraction(1, 4), 3, 4) ** 4).value == 76


@settings(max_examples=80, deadline=None)
@given(zp, st.sampled_from([3, 5, 7, 11]), st.integers(1, 3))
def test_fast_evaluator_matches_naive_product(x, p, N):
    if x.denominator % p == 0:
        return
    assert gamma_p(x, p, N) == gamma_p_naive(x, p, N)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2000), st.integers(1, 30), st.sampled_from([3, 5, 7]), st.integers(1, 3))
def test_continuity(kk, j, p, M):
    assert gamma_p(kk, p, M) == gamma_p(kk + j * p**M, p, M)


@settings(max_examples=60, deadline=None)
@given(zp, st.sampled_from(SMALL_PRIMES), st.integers(1, 4))
def test_reflection(x, p, N):
    if x.denominator % p:
        assert reflection_holds(x, p, N)


@settings(max_examples=60, deadline=None)
@given(zp, st.sampled_from(SMALL_PRIMES), st.integers(1, 4))
def test_ratio_identity(s, p, N):
    if s.denominator % p:
        assert ratio_identity_holds(s, p, N)


@settings(max_examples=60, deadline=None)
@given(zp, st.sampled_from([3] + SMALL_PRIMES))
def test_a0_parity(x, p):
    if x.denominator % p:
        assert a0_parity_holds(x, p)


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(3, 4)])
@pytest.mark.parametrize("p", [5, 7, 13])
def test_shifted_ratio(alpha, p):
    if alpha.denominator % p == 0:
        return
    assert all(shifted_ratio_holds(alpha, kk, p, 3) for kk in range(2 * p + 1))


@pytest.mark.parametrize("p", ODD_PRIMES_50)
def test_half_square_and_pochhammer_identities(p):
    assert half_square_holds(p, 5)
    assert all(pochhammer_gamma_identities(p, 5).values())


@pytest.mark.parametrize("p", [q for q in ODD_PRIMES_50 if q >= 5])
def test_half_quotient(p):
    assert half_quotient_holds(p)


def test_mod_trick_and_two_thirds():
    rng = random.Random(7)
    for p in ODD_PRIMES_50:
        for _ in range(5):
            assert mod_trick_holds(p, rng.randint(1, 5), rng.randint(-10**6, 10**6))
    assert all(two_thirds_sign(p) == -1 for p in (7, 13, 19, 31, 37, 43))


def test_gk_extraction_routes_agree():
    assert gk_extract(Fraction(1, 2), 5, 1, 2).residue == gk_finite_difference(Fraction(1, 2), 5, 2)
    assert gk_extract(Fraction(1, 3), 7, 0, 2).residue.value == 1
    g = gk_extract(Fraction(1, 3), 7, 1, 2).residue
    assert g == gk_extract(Fraction(2, 3), 7, 1, 2).residue


def test_gk_identities():
    for p in (5, 7, 11, 13):
        for a in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)):
            assert all(gk_identities(a, p, 2).values())
        assert all(g_at_zero_identities(p, 2).values())
        for s, r in ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 4), Fraction(3, 2)), (Fraction(1, 3), 2)):
            assert all(binomial_expansions_hold(s, r, p).values())


@pytest.mark.parametrize("t,r", [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)])
@pytest.mark.parametrize("p", [5, 7, 11])
def test_forward_expansion(t, r, p):
    a = Fraction(1, 3)
    c = gk_expansion(a, p, 2, r)
    for b in (3, 4, Fraction(1, 2), Fraction(-5, 7) if p != 7 else Fraction(2, 9)):
        assert forward_expansion_holds(a, b, p, t, r, c)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_forward_expansion_t3(p):
    a = Fraction(1, 4)
    c = gk_expansion(a, p, 3, 1)
    for b in (4, 5, Fraction(1, 2)):
        assert forward_expansion_holds(a, b, p, 3, 1, c)


def test_gk_needs_p_at_least_5():
    with pytest.raises(ValueError):
        gk_extract(Fraction(1, 2), 3, 1, 1)
