import pytest

from wzsc.parse import NonLinearIndex, ParseError, parse_term
from wzsc.poly import N
from wzsc.term import HyperTerm, LinearIndex


def test_b2_summand():
    t = parse_term("(4*n+1)*(-1)^(n)*poch(1/2,n)^3/poch(1,n)^3")
    expected = HyperTerm(
        sign=LinearIndex(1, 0, 0),
        prefactor=4 * N + 1,
        pochhammers=[("1/2", LinearIndex(1, 0, 0), 3), (1, LinearIndex(1, 0, 0), -3)],
    )
    assert t == expected


def test_simple_and_whitespace():
    assert parse_term("poch(1,k)") == HyperTerm.poch(1, LinearIndex(0, 1, 0))
    assert parse_term(" poch( 1/2 , 2*n - k + 1 ) ") == parse_term("poch(1/2,2*n-k+1)")


def test_non_linear_index():
    with pytest.raises(NonLinearIndex) as exc:
        parse_term("poch(1/2, n*k)")
    assert exc.value.position == 10
    with pytest.raises(NonLinearIndex):
        parse_term("poch(1/2, n/2)")


@pytest.mark.parametrize(
    "text",
    ["", "poch(1/2,n", "2**n", "n+poch(1,n)", "poch(n,1)", "n^(n^2)", "0", "(n-n)^-1", "x"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_term(text)


def test_error_position_points_at_offender():
    with pytest.raises(ParseError) as exc:
        parse_term("poch(1,n)*$")
    assert exc.value.position == 10


@pytest.mark.parametrize(
    "text",
    [
        "-16*(-1)^(k)*(n^4 - n^3*k)*poch(1/2,n)^3/(8*k^3 + 12*k^2 + 6*k + 1)/poch(1/2,k)^3",
        "3/7*2^(4*k)*poch(1/3,n-k)^-2",
        "(n+1)^2/(2*n+3)",
        "(-4)^(n+k)*5^(-k)",
    ],
)
def test_round_trip(text):
    t = parse_term(text)
    assert parse_term(str(t)) == t
    assert str(parse_term(str(t))) == str(t)
