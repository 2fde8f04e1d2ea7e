"""Exact rationals, p-adic valuations and residues modulo prime powers.

Rationals are :class:`fractions.Fraction`, which are kept in lowest terms
with a positive denominator after every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]


class _Infinity:
    """Valuation of zero. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("wzsc-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


class NotPadicInteger(ValueError):
    """The rational has a power of p in its denominator."""


class ResidueMismatch(ValueError):
    """Residues with different (p, N) were combined."""


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def int_val(m: int, p: int) -> int:
    """Exponent of p in the nonzero integer m."""
    if m == 0:
        raise ValueError("valuation of 0 is infinite")
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def padic_val(q: RationalLike, p: int):
    """ord_p(q); ``INF`` for q = 0."""
    q = as_rational(q)
    if q == 0:
        return INF
    v = int_val(q.numerator, p) - int_val(q.denominator, p)
    return v


def residue_mod(q: RationalLike, p: int, N: int) -> "PadicResidue":
    q = as_rational(q)
    if N < 1:
        raise ValueError("exponent must be positive")
    if q.denominator % p == 0:
        raise NotPadicInteger(f"{q} has negative {p}-adic valuation")
    M = p**N
    return PadicResidue(p, N, q.numerator * pow(q.denominator, -1, M) % M)


@dataclass(frozen=True)
class PadicResidue:
    """An element of Z/p^N Z, tagged with (p, N)."""

    p: int
    N: int
    value: int

    def __post_init__(self):
        M = self.p**self.N
        if not 0 <= self.value < M:
            object.__setattr__(self, "value", self.value % M)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _coerce(self, other) -> "PadicResidue":
        if isinstance(other, PadicResidue):
            if (other.p, other.N) != (self.p, self.N):
                raise ResidueMismatch(
                    f"mod {self.p}^{self.N} combined with mod {other.p}^{other.N}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return residue_mod(other, self.p, self.N)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicResidue(self.p, self.N, (self.value + o.value) % self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicResidue(self.p, self.N, (self.value - o.value) % self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicResidue(self.p, self.N, self.value * o.value % self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicResidue(self.p, self.N, -self.value % self.modulus)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> "PadicResidue":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.p}")
        return PadicResidue(self.p, self.N, pow(self.value, -1, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicResidue(self.p, self.N, pow(self.value, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PadicResidue):
            return (self.p, self.N, self.value) == (other.p, other.N, other.value)
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == residue_mod(other, self.p, self.N).value
            except NotPadicInteger:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.N, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p}^{self.N})"
