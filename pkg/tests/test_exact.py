from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wzsc.exact import (
    INF,
    NotPadicInteger,
    PadicResidue,
    ResidueMismatch,
    as_rational,
    int_val,
    padic_val,
    residue_mod,
)

PRIMES = [3, 5, 7, 11, 13]
nonzero = st.integers(min_value=-10**6, max_value=10**6).filter(bool)


def test_as_rational_accepts_strings_and_ints():
    assert as_rational("21/16") == Fraction(21, 16)
    assert as_rational(7) == Fraction(7)


def test_valuation_examples():
    assert int_val(250, 5) == 3
    assert padic_val(Fraction(-2125, 512), 5) == 3
    assert padic_val(Fraction(3, 25), 5) == -2
    assert padic_val(0, 7) is INF


def test_infinity_orders_above_integers():
    assert INF > 10**9 and INF >= 3 and not INF < 0
    assert str(INF) == "inf"


def test_residue_of_fraction():
    r = residue_mod(Fraction(21, 16), 3, 3)
    assert r.value == 3
    assert r == Fraction(21, 16)
    with pytest.raises(NotPadicInteger):
        residue_mod(Fraction(1, 9), 3, 2)


def test_mixed_moduli_are_rejected():
    with pytest.raises(ResidueMismatch):
        PadicResidue(5, 2, 1) + PadicResidue(5, 3, 1)


def test_inverse_of_non_unit_raises():
    with pytest.raises(ZeroDivisionError):
        PadicResidue(5, 2, 10).inverse()


@given(nonzero, nonzero, nonzero, nonzero, st.sampled_from(PRIMES), st.integers(1, 4))
def test_residue_is_a_ring_map(a, b, c, d, p, N):
    x, y = Fraction(a, b), Fraction(c, d)
    if padic_val(x, p) < 0 or padic_val(y, p) < 0:
        return
    rx, ry = residue_mod(x, p, N), residue_mod(y, p, N)
    assert residue_mod(x + y, p, N) == rx + ry
    assert residue_mod(x * y, p, N) == rx * ry
    assert residue_mod(x - y, p, N) == rx - ry


@given(nonzero, nonzero, nonzero, nonzero, st.sampled_from(PRIMES))
def test_valuation_is_additive(a, b, c, d, p):
    x, y = Fraction(a, b), Fraction(c, d)
    assert padic_val(x * y, p) == padic_val(x, p) + padic_val(y, p)
    assert padic_val(x + y, p) >= min(padic_val(x, p), padic_val(y, p))
