"""Shared inputs: the printed bivariate terms and their printed operators."""

from fractions import Fraction

from wzsc.parse import parse_term
from wzsc.poly import K, Poly
from wzsc.summation import DifferenceOperator

k = K


def device_term(a: int, m: int, sign: bool, u: str) -> "HyperTerm":  # noqa: F821
    """u(n) (-1)^n (1/a)_n^(m-1) (1/a)_{n+k} / ((1)_n^(m-1) (1)_{n-k})."""
    x = Fraction(1, a)
    s = "(-1)^(n)*" if sign else ""
    text = f"({u})*{s}poch({x},n)^{m - 1}*poch({x},n+k)/poch(1,n)^{m - 1}/poch(1,n-k)"
    return parse_term(text)


# (term, collapse parameters (a, m))
ROWS = {
    "B.2": (device_term(2, 3, True, "4*n+1"), (2, 3)),
    "C.2": (device_term(2, 4, False, "4*n+1"), (2, 4)),
    "E.2": (device_term(3, 3, True, "6*n+1"), (3, 3)),
    "F.2": (device_term(4, 3, True, "8*n+1"), (4, 3)),
    "G.2": (device_term(4, 4, False, "8*n+1"), (4, 4)),
    "H.2": (device_term(2, 3, False, "1"), None),
    "D.2": (
        parse_term(
            "(6*n+1)*poch(1/3,n)^4*poch(1/3,n+k)*poch(1/3,n-k)/poch(1,n)^4/poch(1,n-k)/poch(1,n+k)"
        ),
        None,
    ),
}


def op(*coeffs) -> DifferenceOperator:
    return DifferenceOperator(tuple(c if isinstance(c, Poly) else Poly.const(c) for c in coeffs))


PRINTED_RAW = {
    "B.2": op(
        (4 * k + 5) * (4 * k + 3) * (2 * k + 3) ** 2 * (2 * k + 1) ** 2,
        2 * (145 * k**2 + 386 * k + 285) * (2 * k + 3) ** 2,
        1552 * k**2 + 5816 * k + 5796,
        648,
    ),
    "C.2": op(
        -(4 * k + 5) * (4 * k + 3) * (2 * k + 3) ** 3 * (2 * k + 1) ** 3,
        2 * (33 * k**3 - 285 * k**2 - 1045 * k - 863) * (2 * k + 3) ** 3,
        7728 * k**4 + 47952 * k**3 + 110932 * k**2 + 109628 * k + 36204,
        9776 * k**2 + 41944 * k + 50448,
        3600,
    ),
    "E.2": op(
        (6 * k + 7) * (3 * k + 4) ** 2 * (3 * k + 2) * (3 * k + 1) ** 2,
        6 * (250 * k**2 + 563 * k + 340) * (3 * k + 4) ** 2,
        22626 * k**2 + 77121 * k + 70794,
        10584,
    ),
    "F.2": op(
        (8 * k + 9) * (8 * k + 5) * (4 * k + 5) ** 2 * (4 * k + 1) ** 2,
        4 * (4737 * k**2 + 9986 * k + 5465) * (4 * k + 5) ** 2,
        557184 * k**2 + 1827232 * k + 1627760,
        270400,
    ),
    "G.2": op(
        -(8 * k + 9) * (8 * k + 5) * (4 * k + 5) ** 3 * (4 * k + 1) ** 3,
        4 * (61953 * k**3 + 182019 * k**2 + 174371 * k + 53153) * (4 * k + 5) ** 3,
        49152768 * k**4 + 318509952 * k**3 + 812974576 * k**2 + 962132816 * k + 443357040,
        49677056 * k**2 + 210799808 * k + 256053120,
        16646400,
    ),
}

PRINTED_LINEAR = {
    "H.2": op(-(4 * k + 1) * (2 * k + 1) ** 2, -4 * (4 * k + 3)),
    "D.2": op(-((3 * k + 1) ** 4), (3 * k + 2) ** 4),
}

PRINTED_COLLAPSED = {
    "C.2": op(-1, -(k + 1)),
    "E.2": op(1, 1),
    "F.2": op(1, 1),
    "B.2": op(1, 1),
    "G.2": op(2, 2 * k + 1),
}

# minimal operators of the raw terms, derived here (order 1 in every case)
DERIVED_MINIMAL = {
    "B.2": op((2 * k + 1) ** 2, 4),
    "C.2": op((2 * k + 1) ** 3, 8 * k + 8),
    "E.2": op((3 * k + 1) ** 2, 9),
    "F.2": op((4 * k + 1) ** 2, 16),
    "G.2": op((4 * k + 1) ** 3, 64 * k + 32),
}

# Gbar as printed (E.2 with its overall sign corrected, see the notes)
PRINTED_GBAR = {
    "H.2": "-(-1)^(k)*poch(3/4,k)/(poch(1/4,k)*poch(1/2,k)^2)/((4*k+1)*(2*k+1)^2)"
    "*8*n^2*(n-k)*poch(1/2,n)^2*poch(1/2,n+k)/(poch(1,n)^2*poch(1,n-k))",
    "C.2": "-16*n^3*(n-k)*(-1)^(k)*poch(1/2,n)^3*poch(1/2,n+k)*poch(1,k)"
    "/((2*k+1)^3*poch(1,n)^3*poch(1,n-k)*poch(1/2,k)^3)",
    "E.2": "27*n^2*(n-k)*(-1)^(n+k)*poch(1/3,n)^2*poch(1/3,n+k)"
    "/((3*k+1)^2*poch(1,n)^2*poch(1,n-k)*poch(1/3,k)^2)",
    "F.2": "64*n^2*(n-k)*(-1)^(n+k)*poch(1/4,n)^2*poch(1/4,n+k)"
    "/((4*k+1)^2*poch(1,n)^2*poch(1,n-k)*poch(1/4,k)^2)",
    "G.2": "-256*n^3*(n-k)*(-1)^(k)*poch(1/4,n)^3*poch(1/4,n+k)*poch(1/2,k)"
    "/((4*k+1)^3*poch(1,n)^3*poch(1,n-k)*poch(1/4,k)^3)",
    "B.2": "8*n^2*(n-k)*(-1)^(n+k)*poch(1/2,n)^2*poch(1/2,n+k)"
    "/((2*k+1)^2*poch(1,n)^2*poch(1,n-k)*poch(1/2,k)^2)",
    "D.2": "729*(2*k+1)*n^4*(n-k)*poch(1/3,n)^4*poch(1/3,n+k)*poch(1/3,n-k)*poch(2/3,k)^4"
    "/((3*k+2-3*n)*(3*k+1)^4*poch(1,n)^4*poch(1,n-k)*poch(1,n+k)*poch(1/3,k)^4)",
}
