"""Supercongruence catalog and the end-to-end verifier.

Each catalog row pairs a truncated sum sum_{n=0}^{(p-1)/d} F(n) with its
right-hand side (an expression in p and Gamma_p values), the WZ device used to
prove it, and the vanishing order its telescoping chain is claimed to reach.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .exact import INF, NotPadicInteger, PadicResidue, padic_val, residue_mod
from .padic import gamma_p
from .parse import parse_term
from .term import POLE, HyperTerm, LinearIndex
from .wzengine import WZPair, derive_pair


class PoleInSum(ArithmeticError):
    """A summand evaluated to a pole; a catalog row is malformed."""


# right-hand sides -------------------------------------------------------------------


class RhsExpr:
    def evaluate(self, p: int, N: int) -> PadicResidue:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(RhsExpr):
    value: Fraction

    def evaluate(self, p, N):
        return residue_mod(self.value, p, N)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class P(RhsExpr):
    def evaluate(self, p, N):
        return PadicResidue(p, N, p)

    def __str__(self):
        return "p"


@dataclass(frozen=True)
class GammaP(RhsExpr):
    arg: Fraction

    def evaluate(self, p, N):
        return gamma_p(self.arg, p, N)

    def __str__(self):
        return f"Gamma_p({self.arg})"


@dataclass(frozen=True)
class Neg(RhsExpr):
    e: RhsExpr

    def evaluate(self, p, N):
        return -self.e.evaluate(p, N)

    def __str__(self):
        return f"-{self.e}"


@dataclass(frozen=True)
class Mul(RhsExpr):
    a: RhsExpr
    b: RhsExpr

    def evaluate(self, p, N):
        return self.a.evaluate(p, N) * self.b.evaluate(p, N)

    def __str__(self):
        return f"{self.a}*{self.b}"


@dataclass(frozen=True)
class Div(RhsExpr):
    a: RhsExpr
    b: RhsExpr

    def evaluate(self, p, N):
        return self.a.evaluate(p, N) / self.b.evaluate(p, N)

    def __str__(self):
        return f"{self.a}/({self.b})"


@dataclass(frozen=True)
class Pow(RhsExpr):
    e: RhsExpr
    n: int

    def evaluate(self, p, N):
        return self.e.evaluate(p, N) ** self.n

    def __str__(self):
        return f"{self.e}^{self.n}"


@dataclass(frozen=True)
class ModCond(RhsExpr):
    modulus: int
    branches: Tuple[Tuple[int, RhsExpr], ...]

    def select(self, p: int) -> RhsExpr:
        for r, e in self.branches:
            if p % self.modulus == r:
                return e
        raise ValueError(f"no branch for p = {p} mod {self.modulus}")

    def evaluate(self, p, N):
        return self.select(p).evaluate(p, N)

    def __str__(self):
        parts = "; ".join(f"{e} if p = {r} mod {self.modulus}" for r, e in self.branches)
        return "{" + parts + "}"


def _g(x: str) -> GammaP:
    return GammaP(Fraction(x))


# catalog -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Extension:
    condition: Optional[Tuple[int, int]]  # (modulus, residue), None for every qualifying p
    exponent: int
    rhs: RhsExpr


@dataclass(frozen=True)
class SupercongruenceSpec:
    id: str
    d: int
    residue_condition: Optional[Tuple[int, int]]
    min_prime: int
    summand_text: str
    exponent: int
    rhs: RhsExpr
    extensions: Tuple[Extension, ...] = ()
    device_text: Optional[str] = None
    collapse: Optional[Tuple[int, int]] = None
    chain_moduli: Tuple[Tuple[Optional[Tuple[int, int]], int], ...] = ()

    @property
    def summand(self) -> HyperTerm:
        return _parsed(self.summand_text)

    @property
    def device(self) -> Optional[HyperTerm]:
        return _parsed(self.device_text) if self.device_text else None

    def qualifies(self, p: int) -> bool:
        if p < self.min_prime or not is_prime(p):
            return False
        if self.residue_condition:
            mod, r = self.residue_condition
            return p % mod == r
        return True

    def bound(self, p: int) -> int:
        return (p - 1) // self.d

    def applicable(self, p: int) -> Tuple[int, RhsExpr, bool]:
        """(exponent, rhs, is_extension) at the strongest claim that applies to p."""
        for ext in sorted(self.extensions, key=lambda e: -e.exponent):
            if ext.condition is None or p % ext.condition[0] == ext.condition[1]:
                return ext.exponent, ext.rhs, True
        return self.exponent, self.rhs, False

    def chain_modulus(self, p: int) -> Optional[int]:
        for cond, v in self.chain_moduli:
            if cond is None or p % cond[0] == cond[1]:
                return v
        return None


@lru_cache(maxsize=None)
def _parsed(text: str) -> HyperTerm:
    return parse_term(text)


def _half_device(a: str, extra: str) -> str:
    return f"poch(1,n)*poch({a},n+k)/poch({a},n)/poch(1,n-k)*{extra}"


CATALOG: Dict[str, SupercongruenceSpec] = {
    s.id: s
    for s in [
        SupercongruenceSpec(
            "B.2", 2, None, 3,
            "(4*n+1)*(-1)^(n)*poch(1/2,n)^3/poch(1,n)^3",
            3, Div(Neg(P()), Pow(_g("1/2"), 2)),
            device_text=_half_device("1/2", "(-1)^(k)/poch(1/2,k)^2"),
            collapse=(2, 3), chain_moduli=((None, 3),),
        ),
        SupercongruenceSpec(
            "C.2", 2, None, 3,
            "(4*n+1)*poch(1/2,n)^4/poch(1,n)^4",
            3, P(),
            device_text=_half_device("1/2", "(-1)^(k)*poch(1,k)/poch(1/2,k)^3"),
            collapse=(2, 4), chain_moduli=((None, 4),),
        ),
        SupercongruenceSpec(
            "D.2", 3, (6, 1), 7,
            "(6*n+1)*poch(1/3,n)^6/poch(1,n)^6",
            4, Mul(Neg(P()), Pow(_g("1/3"), 9)),
            device_text="poch(1,n)^2*poch(1/3,n+k)*poch(1/3,n-k)/poch(1/3,n)^2/poch(1,n-k)/poch(1,n+k)"
            "*poch(2/3,k)^4/poch(1/3,k)^4",
            chain_moduli=((None, 5),),
        ),
        SupercongruenceSpec(
            "E.2", 3, (6, 1), 7,
            "(6*n+1)*(-1)^(n)*poch(1/3,n)^3/poch(1,n)^3",
            3, P(),
            device_text=_half_device("1/3", "(-1)^(k)/poch(1/3,k)^2"),
            collapse=(3, 3), chain_moduli=((None, 3),),
        ),
        SupercongruenceSpec(
            "F.2", 4, (4, 1), 5,
            "(8*n+1)*(-1)^(n)*poch(1/4,n)^3/poch(1,n)^3",
            3, Div(Neg(P()), Mul(_g("1/4"), _g("3/4"))),
            device_text=_half_device("1/4", "(-1)^(k)/poch(1/4,k)^2"),
            collapse=(4, 3), chain_moduli=((None, 3),),
        ),
        SupercongruenceSpec(
            "G.2", 4, (4, 1), 5,
            "(8*n+1)*poch(1/4,n)^4/poch(1,n)^4",
            3, Div(Mul(Mul(P(), _g("1/2")), _g("1/4")), _g("3/4")),
            extensions=(Extension(None, 4, Div(Mul(Mul(P(), _g("1/2")), _g("1/4")), _g("3/4"))),),
            device_text=_half_device("1/4", "(-1)^(k)*poch(1/2,k)/poch(1/4,k)^3"),
            collapse=(4, 4), chain_moduli=((None, 4),),
        ),
        SupercongruenceSpec(
            "H.2", 2, None, 3,
            "poch(1/2,n)^3/poch(1,n)^3",
            2, ModCond(4, ((1, Neg(Pow(_g("1/4"), 4))), (3, Const(Fraction(0))))),
            extensions=(
                Extension((4, 3), 3, Neg(Div(Mul(Pow(P(), 2), Pow(_g("1/4"), 4)), Const(Fraction(16))))),
            ),
            device_text=_half_device("1/2", "(-1)^(k)*poch(3/4,k)/poch(1/4,k)/poch(1/2,k)^2"),
            chain_moduli=(((4, 3), 3), ((4, 1), 2)),
        ),
        SupercongruenceSpec(
            "I.2", 2, None, 3,
            "poch(1/2,n)^2/(poch(1,n)^2*(n+1))",
            3, Mul(Const(Fraction(2)), Pow(P(), 2)),
        ),
    ]
}


def get_spec(spec_id: str) -> SupercongruenceSpec:
    try:
        return CATALOG[spec_id]
    except KeyError:
        raise KeyError(f"unknown supercongruence id {spec_id!r}; known: {sorted(CATALOG)}") from None


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    i = 2
    while i * i <= m:
        if m % i == 0:
            return False
        i += 1
    return True


def qualifying_primes(spec: SupercongruenceSpec, pmin: int, pmax: int) -> List[int]:
    return [p for p in range(max(pmin, 2), pmax + 1) if spec.qualifies(p)]


def base_device(spec: SupercongruenceSpec) -> HyperTerm:
    """The n-dependent part of the catalog device: w(n,k) with the k-only factor removed."""
    return _strip_k_only(spec.device)


def _strip_k_only(w: HyperTerm) -> HyperTerm:
    keep = [(x, idx, pw) for x, idx, pw in w.pochhammers if idx.a != 0]
    sign = LinearIndex(w.sign.a, 0, 0)
    geo = [(pr, e) for pr, e in w.geometric if e.a != 0]
    return HyperTerm(w.constant, sign, geo, w.prefactor, keep)


# sums and checks -----------------------------------------------------------------------------


def lhs_sum(spec: SupercongruenceSpec, p: int) -> Fraction:
    if not spec.qualifies(p):
        raise ValueError(f"p = {p} does not qualify for {spec.id}")
    F = spec.summand
    total = Fraction(0)
    for n in range(spec.bound(p) + 1):
        v = F.eval(n, 0)
        if v is POLE:
            raise PoleInSum(f"{spec.id} summand has a pole at n = {n}")
        total += v
    if padic_val(total, p) < 0:
        raise NotPadicInteger(f"{spec.id} sum at p = {p} is not p-integral")
    return total


def rhs_value(spec: SupercongruenceSpec, p: int, N: Optional[int] = None) -> PadicResidue:
    exponent, rhs, _ = spec.applicable(p)
    return rhs.evaluate(p, N or exponent)


@dataclass
class ChainReport:
    id: str
    p: int
    s: int
    modulus: Optional[int]
    valuations: List[object]
    vanishing: bool
    partial_sums: bool
    gbar_zero: bool
    self_nulling: bool
    boundary_exponent: int
    boundary_valuation: object
    boundary: bool

    @property
    def passed(self) -> bool:
        return self.vanishing and self.partial_sums and self.gbar_zero and self.self_nulling and self.boundary


@dataclass
class VerificationReport:
    id: str
    p: int
    exponent: int
    lhs: Fraction
    rhs_residue: PadicResidue
    difference_valuation: object
    passed: bool
    chain: Optional[ChainReport] = None
    notes: List[str] = field(default_factory=list)


def check(spec: SupercongruenceSpec, p: int, exponent: Optional[int] = None) -> VerificationReport:
    """Compare the exact sum with the right-hand side at the strongest applicable exponent."""
    ext_exp, rhs, is_ext = spec.applicable(p)
    if exponent is None:
        exponent = ext_exp
    elif exponent <= spec.exponent:
        rhs, is_ext = spec.rhs, False
    lhs = lhs_sum(spec, p)
    res = rhs.evaluate(p, exponent)
    dv = padic_val(lhs - res.value, p)
    report = VerificationReport(spec.id, p, exponent, lhs, res, dv, dv >= exponent)
    if is_ext:
        report.notes.append(f"extension claim at exponent {exponent}")
    if spec.id == "H.2" and p % 4 == 3:
        v = padic_val(lhs, p)
        report.notes.append(f"original claim sum = 0 mod p^2: {'holds' if v >= 2 else 'fails'} (val {v})")
    if dv is not INF and dv > exponent:
        report.notes.append(f"observed valuation {dv} exceeds exponent {exponent}")
    return report


@lru_cache(maxsize=None)
def catalog_pair(spec_id: str) -> WZPair:
    """WZ pair for a catalog row, derived from summand * n-part of its device."""
    spec = get_spec(spec_id)
    if spec.device_text is None:
        raise ValueError(f"{spec_id} has no WZ device")
    F = spec.summand * base_device(spec)
    return derive_pair(F, collapse=spec.collapse).pair


def chain_check(spec: SupercongruenceSpec, p: int, pair: Optional[WZPair] = None) -> ChainReport:
    if not spec.qualifies(p):
        raise ValueError(f"p = {p} does not qualify for {spec.id}")
    pair = pair or catalog_pair(spec.id)
    Fbar, Gbar = pair.Fbar, pair.Gbar
    s = spec.bound(p)
    modulus = spec.chain_modulus(p)
    sums = [sum((Fbar.eval(n, k) for n in range(s + 1)), Fraction(0)) for k in range(s + 1)]
    vals: List[object] = []
    partial_ok = True
    for k in range(s):
        g = Gbar.eval(s + 1, k)
        vals.append(padic_val(g, p))
        if sums[k + 1] - sums[k] != g:
            partial_ok = False
    vanishing = modulus is not None and all(v >= modulus for v in vals)
    gbar_zero = all(Gbar.eval(0, k) == 0 for k in range(s + 1))
    fss = Fbar.eval(s, s)
    self_nulling = sums[s] == fss
    exponent, rhs, _ = spec.applicable(p)
    e = min(exponent, modulus) if modulus is not None else exponent
    bv = padic_val(fss - rhs.evaluate(p, e).value, p)
    return ChainReport(spec.id, p, s, modulus, vals, vanishing, partial_ok, gbar_zero,
                       self_nulling, e, bv, bv >= e)


def i2_closed_form_holds(p: int) -> bool:
    """sum_{n<=(p-1)/2} (1/2)_n^2/((1)_n^2 (n+1)) = 4 h (1/2)_h^2/(1)_h^2 with h = (p+1)/2."""
    total = Fraction(0)
    term = Fraction(1)
    for n in range((p - 1) // 2 + 1):
        total += term / (n + 1)
        term *= Fraction(2 * n + 1, 2 * (n + 1)) ** 2
    h = (p + 1) // 2
    return total == 4 * h * term


def sweep(spec: SupercongruenceSpec, pmin: int, pmax: int, with_chain: bool = False) -> List[VerificationReport]:
    out = []
    for p in qualifying_primes(spec, pmin, pmax):
        r = check(spec, p)
        if with_chain and spec.device_text:
            r.chain = chain_check(spec, p)
        out.append(r)
    return out
