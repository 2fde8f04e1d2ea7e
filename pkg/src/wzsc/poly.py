"""Polynomials and rational functions over Q in the variables n and k.

A :class:`Poly` is a sparse map from exponent pairs ``(i, j)`` (meaning
``n**i * k**j``) to nonzero :class:`~fractions.Fraction` coefficients.  The
fixed monomial order is lexicographic with ``n > k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

VARS = ("n", "k")
_IDX = {"n": 0, "k": 1}

Number = Union[int, Fraction]


class NotSplitOverRationals(ValueError):
    """A polynomial has an irreducible factor of degree >= 2 over Q."""


def _other(var: str) -> str:
    return "k" if var == "n" else "n"


def _check_var(var: str) -> int:
    try:
        return _IDX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected 'n' or 'k'") from None


def _binomials(d: int) -> List[List[int]]:
    rows = [[1]]
    for i in range(1, d + 1):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1])
    return rows


class Poly:
    """Immutable polynomial in n and k with rational coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Tuple[int, int], Number] | None = None):
        t: Dict[Tuple[int, int], Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[e] = c if isinstance(c, Fraction) else Fraction(c)
        self._t = t
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({(1, 0): 1} if _check_var(name) == 0 else {(0, 1): 1})

    @classmethod
    def linear(cls, a: Number, b: Number, c: Number) -> "Poly":
        """a*n + b*k + c"""
        return cls({(1, 0): a, (0, 1): b, (0, 0): c})

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Mapping[int, "Poly"]) -> "Poly":
        """Inverse of :meth:`coeffs`: sum of coeffs[d] * var**d."""
        i = _check_var(var)
        t: Dict[Tuple[int, int], Fraction] = {}
        for d, c in coeffs.items():
            for (a, b), v in c._t.items():
                e = (a + d, b) if i == 0 else (a, b + d)
                t[e] = t.get(e, 0) + v
        return cls(t)

    @classmethod
    def from_univariate(cls, var: str, coeffs: Sequence[Number]) -> "Poly":
        """coeffs[d] is the coefficient of var**d."""
        i = _check_var(var)
        return cls({((d, 0) if i == 0 else (0, d)): c for d, c in enumerate(coeffs)})

    # inspection -------------------------------------------------------------

    @property
    def terms(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._t)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._t.get((0, 0), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self._t:
            return -1
        if var is None:
            return max(a + b for a, b in self._t)
        i = _check_var(var)
        return max(e[i] for e in self._t)

    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v in VARS if self.degree(v) > 0)

    def coeffs(self, var: str) -> Dict[int, "Poly"]:
        """Coefficients as polynomials in the other variable, keyed by degree in ``var``."""
        i = _check_var(var)
        out: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
        for (a, b), c in self._t.items():
            d, rest = (a, (0, b)) if i == 0 else (b, (a, 0))
            out.setdefault(d, {})[rest] = c
        return {d: Poly(t) for d, t in out.items()}

    def coeff(self, var: str, d: int) -> "Poly":
        return self.coeffs(var).get(d, ZERO)

    def lc(self, var: str) -> "Poly":
        return self.coeff(var, self.degree(var))

    def leading_term(self) -> Tuple[Tuple[int, int], Fraction]:
        e = max(self._t)
        return e, self._t[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1] if self._t else Fraction(0)

    # arithmetic -------------------------------------------------------------

    @staticmethod
    def _lift(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        for e, c in o._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self._t or not o._t:
            return ZERO
        if len(o._t) == 1 and (0, 0) in o._t:
            c = o._t[(0, 0)]
            return Poly({e: v * c for e, v in self._t.items()})
        t: Dict[Tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in o._t.items():
                e = (a1 + a2, b1 + b2)
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            c = Fraction(other)
            return Poly({e: v / c for e, v in self._t.items()})
        if isinstance(other, Poly):
            return divexact(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == Poly.const(other)._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    # substitution -------------------------------------------------------------

    def __call__(self, n: Number = 0, k: Number = 0) -> Fraction:
        total = Fraction(0)
        for (a, b), c in self._t.items():
            total += c * (n**a) * (k**b)
        return Fraction(total)

    def subs(self, var: str, value: Union[Number, "Poly"]) -> "Poly":
        """Substitute ``var -> value``."""
        cs = self.coeffs(var)
        if not cs:
            return ZERO
        value = Poly._lift(value)
        result = ZERO
        for d in range(max(cs), -1, -1):
            result = result * value + cs.get(d, ZERO)
        return result

    def shift(self, var: str, j: int) -> "Poly":
        """Substitute ``var -> var + j``."""
        if j == 0 or not self._t:
            return self
        i = _check_var(var)
        deg = self.degree(var)
        binom = _binomials(deg)
        t: Dict[Tuple[int, int], Fraction] = {}
        jp = [Fraction(j) ** m for m in range(deg + 1)]
        for e, c in self._t.items():
            d = e[i]
            for m in range(d + 1):
                f = c * binom[d][m] * jp[d - m]
                ne = (m, e[1]) if i == 0 else (e[0], m)
                t[ne] = t.get(ne, 0) + f
        return Poly(t)

    def swap_vars(self) -> "Poly":
        return Poly({(b, a): c for (a, b), c in self._t.items()})

    # normalization ------------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self / c integral and primitive."""
        if not self._t:
            return Fraction(0)
        num = reduce(math.gcd, (c.numerator for c in self._t.values()))
        den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in self._t.values()))
        return Fraction(abs(num), den)

    def primitive(self) -> Tuple[Fraction, "Poly"]:
        """Split as ``c * P`` with P integral, primitive, positive leading coefficient."""
        if not self._t:
            return Fraction(0), ZERO
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return c, Poly({e: v / c for e, v in self._t.items()})

    def monic(self) -> "Poly":
        if not self._t:
            return ZERO
        return self / self.leading_coefficient()

    def to_int_coeffs(self) -> Dict[Tuple[int, int], int]:
        return {e: int(c) for e, c in self._t.items() if c.denominator == 1}

    # printing -----------------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            mono = []
            for name, d in zip(VARS, e):
                if d == 1:
                    mono.append(name)
                elif d > 1:
                    mono.append(f"{name}^{d}")
            mag = abs(c)
            if mono:
                body = "*".join(mono)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self})"


ZERO = Poly()
ONE = Poly.const(1)
N = Poly.var("n")
K = Poly.var("k")


def divexact(a: Poly, b: Poly) -> Poly:
    """Quotient a / b, which must be exact in Q[n, k]."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_constant():
        return a / b.constant_value()
    (bi, bj), bc = b.leading_term()
    q: Dict[Tuple[int, int], Fraction] = {}
    r = a
    while not r.is_zero():
        (ri, rj), rc = r.leading_term()
        if ri < bi or rj < bj:
            raise ValueError(f"{b} does not divide {a}")
        e = (ri - bi, rj - bj)
        c = rc / bc
        q[e] = c
        r = r - Poly({e: c}) * b
    return Poly(q)


def divides(b: Poly, a: Poly) -> bool:
    try:
        divexact(a, b)
    except ValueError:
        return False
    return True


def prem(a: Poly, b: Poly, var: str) -> Poly:
    """Pseudo-remainder of a by b with respect to ``var``."""
    db = b.degree(var)
    lcb = b.lc(var)
    r = a
    e = a.degree(var) - db + 1
    xv = Poly.var(var)
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        t = r.lc(var) * xv ** (dr - db)
        r = lcb * r - t * b
        e -= 1
    return r * lcb**e if e > 0 else r


def _content_in(a: Poly, var: str) -> Poly:
    """gcd of the coefficients of ``a`` viewed as a polynomial in ``var``."""
    if var == "k" or a.degree("k") <= 0 and a.degree("n") <= 0:
        return ONE
    return reduce(_gcd, a.coeffs(var).values(), ZERO)


def _normalize(a: Poly) -> Poly:
    return a.primitive()[1]


def _gcd(a: Poly, b: Poly) -> Poly:
    """gcd as a primitive integral polynomial with positive leading coefficient."""
    if a.is_zero():
        return _normalize(b)
    if b.is_zero():
        return _normalize(a)
    if a.is_constant() or b.is_constant():
        return ONE
    if a.degree("n") > 0 or b.degree("n") > 0:
        var = "n"
    else:
        var = "k"
    ca, cb = _content_in(a, var), _content_in(b, var)
    c = _gcd(ca, cb) if var == "n" else ONE
    pa = divexact(a, ca) if var == "n" else a
    pb = divexact(b, cb) if var == "n" else b
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree(var) > 0:
        r = prem(pa, pb, var)
        pa = pb
        if r.is_zero():
            pb = r
        else:
            pb = _normalize(divexact(r, _content_in(r, var)) if var == "n" else r)
    if not pb.is_zero():
        # constant (in var) remainder: coprime in var
        g = ONE
    else:
        g = divexact(pa, _content_in(pa, var)) if var == "n" else pa
    return _normalize(c * g)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic (lex-leading coefficient 1) gcd; gcd(0, 0) = 0."""
    if a.is_zero() and b.is_zero():
        return ZERO
    return _gcd(a, b).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    g = _gcd(a, b)
    return _normalize(divexact(a, g) * b)


def shift(a: Poly, var: str, j: int) -> Poly:
    return a.shift(var, j)


# rational functions -----------------------------------------------------------


class RationalFunction:
    """Reduced quotient of two polynomials in n, k.

    The denominator is integral, primitive and has a positive leading
    coefficient, so equal functions have equal representations.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer: Poly | Number, denom: Poly | Number = 1, *, reduced: bool = False):
        numer = Poly._lift(numer)
        denom = Poly._lift(denom)
        if denom.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if numer.is_zero():
            numer, denom = ZERO, ONE
        elif not reduced and not denom.is_constant():
            g = _gcd(numer, denom)
            if not g.is_constant():
                numer, denom = divexact(numer, g), divexact(denom, g)
        c, d = denom.primitive()
        self.numer = numer / c if c != 1 else numer
        self.denom = d

    @classmethod
    def from_poly(cls, p: Poly | Number) -> "RationalFunction":
        return cls(p, 1, reduced=True)

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def is_polynomial(self) -> bool:
        return self.denom.is_constant()

    def __add__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        if self.denom == o.denom:
            return RationalFunction(self.numer + o.numer, self.denom)
        return RationalFunction(self.numer * o.denom + o.numer * self.denom, self.denom * o.denom)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numer, self.denom, reduced=True)

    def __sub__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return RationalFunction(0)
        # cross-cancel before multiplying to keep sizes down
        g1 = _gcd(self.numer, o.denom)
        g2 = _gcd(o.numer, self.denom)
        n1, d2 = divexact(self.numer, g1), divexact(o.denom, g1)
        n2, d1 = divexact(o.numer, g2), divexact(self.denom, g2)
        return RationalFunction(n1 * n2, d1 * d2, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.denom, self.numer, reduced=True)

    def __truediv__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.numer**e, self.denom**e, reduced=True)

    def __eq__(self, other):
        o = _lift_rf(other)
        if o is NotImplemented:
            return o
        return self.numer == o.numer and self.denom == o.denom

    def __hash__(self):
        return hash((self.numer, self.denom))

    def shift(self, var: str, j: int) -> "RationalFunction":
        return RationalFunction(self.numer.shift(var, j), self.denom.shift(var, j), reduced=True)

    def subs(self, var: str, value) -> "RationalFunction":
        return RationalFunction(self.numer.subs(var, value), self.denom.subs(var, value))

    def __call__(self, n: Number = 0, k: Number = 0) -> Fraction:
        d = self.denom(n, k)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at n={n}, k={k}")
        return self.numer(n, k) / d

    def __str__(self):
        if self.denom == ONE:
            return str(self.numer)
        return f"({self.numer})/({self.denom})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _lift_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (Poly, int, Fraction)):
        return RationalFunction.from_poly(x)
    return NotImplemented


# linear factorization ---------------------------------------------------------


def _divisors(m: int) -> List[int]:
    m = abs(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class LinearFactorization:
    """``constant * prod(m*var + b)`` with primitive integer pairs, m > 0."""

    constant: Fraction
    factors: Tuple[Tuple[int, int], ...]
    var: str = "k"

    def expand(self) -> Poly:
        x = Poly.var(self.var)
        out = Poly.const(self.constant)
        for m, b in self.factors:
            out = out * (m * x + b)
        return out

    def multiplicities(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for f in self.factors:
            out[f] = out.get(f, 0) + 1
        return out


def split_linear_factors(a: Poly, var: str = "k") -> LinearFactorization:
    """Factor a univariate polynomial into linear factors over Q.

    Raises :class:`NotSplitOverRationals` if an irreducible factor of degree
    two or more is left over.
    """
    if a.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if a.degree(_other(var)) > 0:
        raise ValueError(f"{a} is not univariate in {var}")
    _, prim = a.primitive()
    cs = prim.coeffs(var)
    deg = max(cs)
    coeffs = [int(cs[d].constant_value()) if d in cs else 0 for d in range(deg + 1)]
    factors: List[Tuple[int, int]] = []
    # zero roots
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        factors.append((1, 0))
    while len(coeffs) > 1:
        lead, tail = coeffs[-1], coeffs[0]
        found = None
        for den in _divisors(lead):
            for num in _divisors(tail):
                for s in (num, -num):
                    if math.gcd(s, den) != 1:
                        continue
                    # evaluate den^deg * P(s/den) exactly in integers
                    acc = 0
                    d = len(coeffs) - 1
                    for i in range(d, -1, -1):
                        acc = acc * s + coeffs[i] * den ** (d - i)
                    if acc == 0:
                        found = (den, -s)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            raise NotSplitOverRationals(f"{a} has no rational root left in its factor {Poly.from_univariate(var, coeffs)}")
        m, b = found
        # synthetic division of integer coeffs by (m*x + b)
        d = len(coeffs) - 1
        quot = [0] * d
        rem = coeffs[d]
        for i in range(d - 1, -1, -1):
            if rem % m:
                raise ArithmeticError("non-integral synthetic division")  # pragma: no cover
            q = rem // m
            quot[i] = q
            rem = coeffs[i] - b * q
        coeffs = quot
        factors.append((m, b))
    lead_prod = math.prod(m for m, _ in factors)
    constant = a.lc(var).constant_value() / lead_prod
    factors.sort()
    return LinearFactorization(constant, tuple(factors), var)


def content_normalize(coeffs: Sequence[Poly]) -> List[Poly]:
    """Divide by the rational content of all coefficients together.

    The sign is fixed so the leading coefficient of the highest-index nonzero
    polynomial is positive.
    """
    nz = [c for c in coeffs if not c.is_zero()]
    if not nz:
        raise ValueError("all polynomials are zero")
    num = reduce(math.gcd, (v.numerator for c in nz for v in c.terms.values()))
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (v.denominator for c in nz for v in c.terms.values()))
    scale = Fraction(num, den)
    if nz[-1].leading_coefficient() < 0:
        scale = -scale
    return [c / scale for c in coeffs]


def equal_up_to_scalar(a: Sequence[Poly], b: Sequence[Poly]) -> bool:
    """Whether two coefficient lists differ by a nonzero rational factor."""
    a = list(a)
    b = list(b)
    while a and a[-1].is_zero():
        a.pop()
    while b and b[-1].is_zero():
        b.pop()
    if len(a) != len(b) or not a:
        return False
    return content_normalize(a) == content_normalize(b)
