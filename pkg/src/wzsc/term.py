"""Hypergeometric terms in n and k.

A term is a product

    constant * (-1)^S * prod(prime^E) * P(n,k)/Q(n,k) * prod((x)_L ^ e)

where S, E and L are integer-linear forms in n and k.  Terms are put in a
canonical form on construction, so structural equality is value equality for
everything built from the same kinds of parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from .poly import ONE, Poly, RationalFunction

Number = Union[int, Fraction]


class DivisorZeroPolynomial(ZeroDivisionError):
    """Division by a term whose prefactor is the zero polynomial."""


class NotRational(ValueError):
    """The term is not a rational function of n and k."""


class _Pole:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"

    __str__ = __repr__


POLE = _Pole()
ExtendedValue = Union[Fraction, _Pole]


def is_pole(v) -> bool:
    return v is POLE


# linear indices -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LinearIndex:
    """a*n + b*k + c with integer coefficients."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __call__(self, n: int = 0, k: int = 0) -> int:
        return self.a * n + self.b * k + self.c

    def coeff(self, var: str) -> int:
        if var == "n":
            return self.a
        if var == "k":
            return self.b
        raise ValueError(f"unknown variable {var!r}")

    def is_constant(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other):
        if isinstance(other, int):
            return LinearIndex(self.a, self.b, self.c + other)
        if isinstance(other, LinearIndex):
            return LinearIndex(self.a + other.a, self.b + other.b, self.c + other.c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LinearIndex(-self.a, -self.b, -self.c)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, m: int) -> "LinearIndex":
        return LinearIndex(m * self.a, m * self.b, m * self.c)

    def shift(self, var: str, j: int) -> "LinearIndex":
        return self + self.coeff(var) * j

    def subs(self, var: str, value: int) -> "LinearIndex":
        if var == "n":
            return LinearIndex(0, self.b, self.c + self.a * value)
        return LinearIndex(self.a, 0, self.c + self.b * value)

    def mod2(self) -> "LinearIndex":
        return LinearIndex(self.a % 2, self.b % 2, self.c % 2)

    def to_poly(self) -> Poly:
        return Poly.linear(self.a, self.b, self.c)

    def __str__(self):
        parts = []
        for coef, name in ((self.a, "n"), (self.b, "k")):
            if coef:
                mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
                parts.append(("-" if coef < 0 else "+", mag + name))
        if self.c or not parts:
            parts.append(("-" if self.c < 0 else "+", str(abs(self.c))))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += sign + body
        return out


# pochhammer ---------------------------------------------------------------------


def _rising(x: Fraction, m: int) -> Fraction:
    v = Fraction(1)
    for i in range(m):
        v *= x + i
    return v


def _falling_below(x: Fraction, m: int) -> Fraction:
    """(x-1)(x-2)...(x-m), which equals (x-m)_m."""
    v = Fraction(1)
    for i in range(1, m + 1):
        v *= x - i
    return v


def pochhammer(x: Number, m: int) -> ExtendedValue:
    """Rising factorial (x)_m, with (x)_{-m} = 1/(x-m)_m."""
    x = Fraction(x)
    if m >= 0:
        return _rising(x, m)
    d = _falling_below(x, -m)
    return POLE if d == 0 else 1 / d


# integer factoring for geometric bases ---------------------------------------------


def _factor_int(m: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    m = abs(m)
    d = 2
    while d * d <= m and d < 1_000_000:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


# the term ------------------------------------------------------------------------


Pochs = Tuple[Tuple[Fraction, LinearIndex, int], ...]


class HyperTerm:
    """Canonical product representation of a hypergeometric term."""

    __slots__ = ("constant", "sign", "geometric", "prefactor", "pochhammers", "_key")

    def __init__(
        self,
        constant: Number = 1,
        sign: LinearIndex = LinearIndex(),
        geometric: Iterable[Tuple[Number, LinearIndex]] = (),
        prefactor: Union[RationalFunction, Poly, Number] = 1,
        pochhammers: Iterable[Tuple[Number, LinearIndex, int]] = (),
    ):
        const = Fraction(constant)
        if const == 0:
            raise ValueError("a hypergeometric term has a nonzero constant")
        sgn = sign
        geo: Dict[int, LinearIndex] = {}
        for base, expo in geometric:
            base = Fraction(base)
            if base == 0:
                raise ValueError("geometric base must be nonzero")
            if expo.is_constant():
                const *= base**expo.c
                continue
            if base < 0:
                sgn = sgn + expo
                base = -base
            for pr, e in _factor_int(base.numerator).items():
                geo[pr] = geo.get(pr, LinearIndex()) + expo.scale(e)
            for pr, e in _factor_int(base.denominator).items():
                geo[pr] = geo.get(pr, LinearIndex()) + expo.scale(-e)
        geo_items = []
        for pr in sorted(geo):
            e = geo[pr]
            if e.is_constant():
                const *= Fraction(pr) ** e.c
            else:
                geo_items.append((pr, e))
        sgn = sgn.mod2()
        if sgn.c:
            const = -const
            sgn = LinearIndex(sgn.a, sgn.b, 0)

        if not isinstance(prefactor, RationalFunction):
            prefactor = RationalFunction.from_poly(prefactor)
        if prefactor.is_zero():
            raise ValueError("a hypergeometric term has a nonzero prefactor")
        c, num = prefactor.numer.primitive()
        const *= c
        pref = RationalFunction(num, prefactor.denom, reduced=True)
        if pref.denom.is_constant():
            const /= pref.denom.constant_value()
            pref = RationalFunction(num, 1, reduced=True)

        pd: Dict[Tuple[Fraction, LinearIndex], int] = {}
        for x, idx, pw in pochhammers:
            key = (Fraction(x), idx)
            pd[key] = pd.get(key, 0) + pw
        pochs = []
        for (x, idx), pw in sorted(pd.items()):
            if pw == 0:
                continue
            if idx.is_constant():
                v = pochhammer(x, idx.c)
                if v is not POLE and v != 0:
                    const *= v**pw
                    continue
            pochs.append((x, idx, pw))

        self.constant = const
        self.sign = sgn
        self.geometric: Tuple[Tuple[int, LinearIndex], ...] = tuple(geo_items)
        self.prefactor = pref
        self.pochhammers: Pochs = tuple(pochs)
        self._key = None

    # constructors ---------------------------------------------------------------

    @classmethod
    def unit(cls) -> "HyperTerm":
        return cls()

    @classmethod
    def from_rational(cls, r: Union[RationalFunction, Poly, Number]) -> "HyperTerm":
        return cls(prefactor=r)

    @classmethod
    def poch(cls, x: Number, idx: LinearIndex, power: int = 1) -> "HyperTerm":
        return cls(pochhammers=[(x, idx, power)])

    # structure ------------------------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (
                self.constant,
                self.sign,
                self.geometric,
                self.prefactor.numer,
                self.prefactor.denom,
                self.pochhammers,
            )
        return self._key

    def __eq__(self, other):
        if not isinstance(other, HyperTerm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def _parts(self):
        return dict(
            constant=self.constant,
            sign=self.sign,
            geometric=list(self.geometric),
            prefactor=self.prefactor,
            pochhammers=list(self.pochhammers),
        )

    def depends_on(self, var: str) -> bool:
        if self.sign.coeff(var) or any(e.coeff(var) for _, e in self.geometric):
            return True
        if any(idx.coeff(var) for _, idx, _ in self.pochhammers):
            return True
        return self.prefactor.numer.degree(var) > 0 or self.prefactor.denom.degree(var) > 0

    # arithmetic -----------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly, RationalFunction)):
            other = HyperTerm.from_rational(other)
        if not isinstance(other, HyperTerm):
            return NotImplemented
        return HyperTerm(
            self.constant * other.constant,
            self.sign + other.sign,
            list(self.geometric) + list(other.geometric),
            self.prefactor * other.prefactor,
            list(self.pochhammers) + list(other.pochhammers),
        )

    __rmul__ = __mul__

    def inverse(self) -> "HyperTerm":
        return HyperTerm(
            1 / self.constant,
            self.sign,
            [(b, -e) for b, e in self.geometric],
            self.prefactor.inverse(),
            [(x, i, -pw) for x, i, pw in self.pochhammers],
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Poly, RationalFunction)):
            other = HyperTerm.from_rational(other)
        if not isinstance(other, HyperTerm):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, Poly, RationalFunction)):
            return HyperTerm.from_rational(other) * self.inverse()
        return NotImplemented

    def __neg__(self):
        return self * -1

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return HyperTerm(
            self.constant**e,
            self.sign.scale(e),
            [(b, x.scale(e)) for b, x in self.geometric],
            self.prefactor**e,
            [(x, i, pw * e) for x, i, pw in self.pochhammers],
        )

    # substitution ---------------------------------------------------------------

    def shift(self, var: str, j: int) -> "HyperTerm":
        return HyperTerm(
            self.constant,
            self.sign.shift(var, j),
            [(b, e.shift(var, j)) for b, e in self.geometric],
            self.prefactor.shift(var, j),
            [(x, i.shift(var, j), pw) for x, i, pw in self.pochhammers],
        )

    def specialize(self, var: str, value: int) -> "HyperTerm":
        """Substitute an integer for one variable."""
        denom = self.prefactor.denom.subs(var, value)
        if denom.is_zero():
            raise ZeroDivisionError(f"prefactor denominator vanishes at {var}={value}")
        return HyperTerm(
            self.constant,
            self.sign.subs(var, value),
            [(b, e.subs(var, value)) for b, e in self.geometric],
            RationalFunction(self.prefactor.numer.subs(var, value), denom),
            [(x, i.subs(var, value), pw) for x, i, pw in self.pochhammers],
        )

    # evaluation -----------------------------------------------------------------

    def eval(self, n: int = 0, k: int = 0) -> ExtendedValue:
        num = Fraction(self.prefactor.numer(n, k))
        den = Fraction(self.prefactor.denom(n, k))
        for pr, e in self.geometric:
            v = e(n, k)
            if v >= 0:
                num *= pr**v
            else:
                den *= pr ** (-v)
        for x, idx, pw in self.pochhammers:
            m = idx(n, k)
            if m >= 0:
                v = _rising(x, m)
                to_num = pw > 0
            else:
                v = _falling_below(x, -m)
                to_num = pw < 0
            if to_num:
                num *= v ** abs(pw)
            else:
                den *= v ** abs(pw)
        if den == 0:
            return POLE
        if num == 0:
            return Fraction(0)
        val = self.constant * num / den
        return -val if self.sign(n, k) % 2 else val

    __call__ = eval

    def ratio(self, var: str) -> RationalFunction:
        """t(var + 1) / t as a reduced rational function."""
        num = self.prefactor.numer.shift(var, 1) * self.prefactor.denom
        den = self.prefactor.numer * self.prefactor.denom.shift(var, 1)
        c = Fraction(1)
        if self.sign.coeff(var) % 2:
            c = -c
        for pr, e in self.geometric:
            c *= Fraction(pr) ** e.coeff(var)
        for x, idx, pw in self.pochhammers:
            a = idx.coeff(var)
            if a == 0:
                continue
            base = idx.to_poly() + x
            if a > 0:
                f = ONE
                for i in range(a):
                    f = f * (base + i)
            else:
                f = ONE
                for i in range(1, -a + 1):
                    f = f * (base - i)
            # f is the ratio (a > 0) or its reciprocal (a < 0)
            if (a > 0) == (pw > 0):
                num = num * f ** abs(pw)
            else:
                den = den * f ** abs(pw)
        return RationalFunction(num * c, den)

    def as_rational(self) -> RationalFunction:
        """The term as a rational function, or NotRational."""
        if self.geometric or not self.sign.is_constant():
            raise NotRational(f"{self} has a geometric or sign part")
        groups: Dict[Tuple[int, int, Fraction], List[Tuple[Fraction, LinearIndex, int]]] = {}
        for x, idx, pw in self.pochhammers:
            top = x + idx.c
            key = (idx.a, idx.b, top - math.floor(top))
            groups.setdefault(key, []).append((x, idx, pw))
        num = self.prefactor.numer * self.constant
        den = self.prefactor.denom
        const = Fraction(1)
        for (a, b, _), members in groups.items():
            if sum(pw for _, _, pw in members) != 0:
                raise NotRational(f"{self} has unbalanced Pochhammer factors")
            tops = [x + idx.c for x, idx, _ in members]
            t0 = min(tops)
            base = Poly.linear(a, b, t0)
            x0 = members[0][0]
            for (x, idx, pw), top in zip(members, tops):
                d = int(top - t0)
                f = ONE
                for i in range(d):
                    f = f * (base + i)
                if pw > 0:
                    num = num * f**pw
                else:
                    den = den * f ** (-pw)
                g = pochhammer(x0, int(x - x0))
                if g is POLE or g == 0:
                    raise NotRational(f"{self} involves Gamma at a pole")
                const /= g**pw
        return RationalFunction(num * const, den)

    # printing -------------------------------------------------------------------

    def __str__(self):
        nums: List[str] = []
        dens: List[str] = []
        c = self.constant
        if c < 0:
            lead = "-"
            c = -c
        else:
            lead = ""
        if c.numerator != 1 or (
            c.denominator == 1
            and not (self.sign != LinearIndex() or self.geometric or self.pochhammers)
            and self.prefactor.numer == ONE
        ):
            nums.append(str(c.numerator))
        if c.denominator != 1:
            dens.append(str(c.denominator))
        if self.sign != LinearIndex():
            nums.append(f"(-1)^({self.sign})")
        for pr, e in self.geometric:
            nums.append(f"{pr}^({e})")
        if self.prefactor.numer != ONE:
            nums.append(f"({self.prefactor.numer})")
        if self.prefactor.denom != ONE:
            dens.append(f"({self.prefactor.denom})")
        for x, idx, pw in self.pochhammers:
            s = f"poch({x},{idx})"
            if abs(pw) != 1:
                s += f"^{abs(pw)}"
            (nums if pw > 0 else dens).append(s)
        if not nums:
            nums.append("1")
        out = lead + "*".join(nums)
        if dens:
            out += "/" + "/".join(dens)
        return out

    def __repr__(self):
        return f"HyperTerm({self})"


def term_mul(s: HyperTerm, t: HyperTerm) -> HyperTerm:
    return s * t


def term_div(s: HyperTerm, t: HyperTerm) -> HyperTerm:
    if t.prefactor.numer.is_zero():
        raise DivisorZeroPolynomial("divisor has zero prefactor")
    return s / t


def ratio(t: HyperTerm, var: str) -> RationalFunction:
    return t.ratio(var)


def eval_term(t: HyperTerm, n: int = 0, k: int = 0) -> ExtendedValue:
    return t.eval(n, k)


UNIT = HyperTerm()
