from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wzsc.poly import K, N, RationalFunction
from wzsc.term import POLE, HyperTerm, LinearIndex, NotRational, pochhammer

L = LinearIndex
ni, ki, nk, n_minus_k = L(1, 0, 0), L(0, 1, 0), L(1, 1, 0), L(1, -1, 0)


def direct_poch(x, m):
    """Plain product oracle, negative index via (x)_{-m} = 1/(x-m)_m."""
    x = Fraction(x)
    if m >= 0:
        out = Fraction(1)
        for j in range(m):
            out *= x + j
        return out
    den = Fraction(1)
    for j in range(-m):
        den *= x + m + j
    return POLE if den == 0 else 1 / den


def test_pochhammer_values():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(1, 0) == 1
    assert pochhammer(1, -3) is POLE
    assert pochhammer(Fraction(1, 3), -1) == Fraction(-3, 2)


def test_self_nulling_factor():
    t = HyperTerm(pochhammers=[(1, n_minus_k, -1)])
    assert t.eval(2, 5) == 0
    assert t.eval(5, 2) == Fraction(1, 6)


def test_canonical_geometric_grouping():
    a = HyperTerm(geometric=[(-4, ki), (4, ki)])
    b = HyperTerm(sign=ki, geometric=[(2, L(0, 4, 0))])
    assert a == b
    assert str(a) == "(-1)^(k)*2^(4*k)"


def test_constant_index_pochhammer_folds():
    t = HyperTerm(pochhammers=[(Fraction(1, 2), L(0, 0, 2), 1)])
    assert t == HyperTerm(constant=Fraction(3, 4))


def test_ratio_of_bivariate_term():
    F = HyperTerm(prefactor=4 * N + 1, pochhammers=[(Fraction(1, 2), nk, 1), (1, n_minus_k, -1)])
    rk = F.ratio("k")
    assert rk == RationalFunction((2 * N + 2 * K + 1) * (N - K), 2)
    assert rk(5, 2) == F.eval(5, 3) / F.eval(5, 2)


def test_as_rational_of_matching_pochhammers():
    a = HyperTerm(pochhammers=[(Fraction(1, 2), L(1, 0, 1), 1), (Fraction(1, 2), ni, -1)])
    assert a.as_rational() == RationalFunction(2 * N + 1, 2)
    with pytest.raises(NotRational):
        HyperTerm(pochhammers=[(Fraction(1, 2), ni, 1)]).as_rational()


def test_specialize_merges_indices():
    F = HyperTerm(pochhammers=[(Fraction(1, 2), nk, 1), (Fraction(1, 2), ni, -1)])
    assert F.specialize("k", 0) == HyperTerm()


def test_zero_constant_rejected():
    with pytest.raises(ValueError):
        HyperTerm(constant=0)


terms = st.builds(
    lambda xs, ids, pws, c, pre: HyperTerm(
        constant=c,
        prefactor=pre,
        pochhammers=list(zip(xs, ids, pws)),
    ),
    st.lists(st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(3, 4), Fraction(1)]), min_size=3, max_size=3),
    st.lists(st.sampled_from([ni, ki, nk, n_minus_k, L(2, 1, -1)]), min_size=3, max_size=3),
    st.lists(st.sampled_from([-2, -1, 1, 2]), min_size=3, max_size=3),
    st.sampled_from([1, -2, Fraction(3, 5)]),
    st.sampled_from([1, 4 * N + 1, N - K + 3]),
)


def oracle_eval(t: HyperTerm, n, k):
    num, den = Fraction(t.prefactor.numer(n, k)), Fraction(t.prefactor.denom(n, k))
    for x, idx, pw in t.pochhammers:
        v = direct_poch(x, idx(n, k))
        if v is POLE:
            if pw > 0:
                return POLE
            num *= 0
            continue
        if v == 0:
            if pw > 0:
                num *= 0
            else:
                return POLE
            continue
        num *= v**pw
    if den == 0:
        return POLE
    for pr, e in t.geometric:
        num *= Fraction(pr) ** e(n, k)
    val = t.constant * num / den
    return -val if t.sign(n, k) % 2 else val


@settings(max_examples=80, deadline=None)
@given(terms, st.integers(0, 8), st.integers(0, 8))
def test_eval_matches_product_oracle(t, n, k):
    assert t.eval(n, k) == oracle_eval(t, n, k)


@settings(max_examples=60, deadline=None)
@given(terms, terms, st.integers(0, 6), st.integers(0, 6))
def test_product_evaluates_pointwise(s, t, n, k):
    a, b, ab = s.eval(n, k), t.eval(n, k), (s * t).eval(n, k)
    if a is POLE or b is POLE or ab is POLE:
        return
    assert ab == a * b


@settings(max_examples=60, deadline=None)
@given(terms, st.integers(0, 6), st.integers(0, 6))
def test_shift_ratio_matches_values(t, n, k):
    for var, (n1, k1) in (("n", (n + 1, k)), ("k", (n, k + 1))):
        r = t.ratio(var)
        a, b = t.eval(n, k), t.eval(n1, k1)
        if a is POLE or b is POLE or a == 0:
            continue
        try:
            assert r(n, k) == b / a
        except ZeroDivisionError:
            pass


@settings(max_examples=60, deadline=None)
@given(terms)
def test_print_is_canonical(t):
    from wzsc.parse import parse_term

    assert parse_term(str(t)) == t
