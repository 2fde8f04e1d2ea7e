"""From a linear telescoping operator to a WZ pair.

Given p_1(k) F(n, k+1) + p_0(k) F(n, k) = G(n+1, k) - G(n, k) with both
coefficients split over Q, the multiplier

    q(k) = (-1)^k phi_{p1}(k) / phi_{p0}(k),   phi_r(k) = c^k prod m_j^k (b_j/m_j)_k

turns (qF, -qG/p_0) into a WZ pair with operator K - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .poly import (
    LinearFactorization,
    NotSplitOverRationals,
    Poly,
    RationalFunction,
    split_linear_factors,
)
from .summation import (
    DifferenceOperator,
    OrderExceeded,
    TelescopingResult,
    creative_telescoping,
)
from .term import POLE, HyperTerm, LinearIndex, NotRational

K_INDEX = LinearIndex(0, 1, 0)


class ZeroCoefficientInRange(ValueError):
    """An operator coefficient vanishes at an integer k inside the working interval."""

    def __init__(self, which: str, k: int):
        super().__init__(f"{which}(k) vanishes at k = {k}")
        self.which = which
        self.k = k


class CertificationFailed(RuntimeError):
    """The assembled pair does not satisfy (K-1)Fbar = (N-1)Gbar."""


@dataclass(frozen=True)
class PhiTransform:
    input: LinearFactorization
    output: HyperTerm


@dataclass(frozen=True)
class WZPair:
    Fbar: HyperTerm
    Gbar: HyperTerm
    q: HyperTerm
    device: HyperTerm
    source_operator: DifferenceOperator


@dataclass
class PairReport:
    passed: bool
    rational_identity: bool
    grid_points: int = 0
    pole_points: List[Tuple[int, int]] = field(default_factory=list)
    mismatches: List[Tuple[int, int]] = field(default_factory=list)
    note: str = ""


@dataclass
class DeviceReport:
    passed: bool
    hypergeometric: bool
    w_n0_is_one: bool
    order: Optional[int]
    operator: Optional[DifferenceOperator]
    splitting: bool
    note: str = ""


def phi_transform(r: Poly) -> PhiTransform:
    fac = split_linear_factors(r, "k")
    geo = [(fac.constant, K_INDEX)]
    pochs = []
    for m, b in fac.factors:
        geo.append((m, K_INDEX))
        pochs.append((Fraction(b, m), K_INDEX, 1))
    return PhiTransform(fac, HyperTerm(geometric=geo, pochhammers=pochs))


def phi(r: Poly) -> HyperTerm:
    """Hypergeometric term in k with phi(k+1)/phi(k) = r(k) and phi(0) = 1."""
    return phi_transform(r).output


def _check_nonzero(p: Poly, which: str, m: int) -> None:
    for k in range(m + 1):
        if p(0, k) == 0:
            raise ZeroCoefficientInRange(which, k)


def build_q(p0: Poly, p1: Poly, m: int = 12) -> HyperTerm:
    """q(k) with q(0) = 1 and q(k+1)/q(k) = -p1(k)/p0(k)."""
    _check_nonzero(p0, "p0", m)
    _check_nonzero(p1, "p1", m)
    sign = HyperTerm(sign=K_INDEX)
    return sign * phi(p1) / phi(p0)


def degree_collapse(F: HyperTerm, a: int, m: int) -> HyperTerm:
    """F / (1/a)_k^(m-1)."""
    if a <= 0 or m <= 0:
        raise ValueError("a and m must be positive")
    if m == 1:
        return F
    return F / HyperTerm.poch(Fraction(1, a), K_INDEX, m - 1)


def infer_collapse(op: DifferenceOperator) -> Optional[Tuple[int, int]]:
    """(a, m) from the factor (a*k + 1) of p_0 with the highest multiplicity."""
    try:
        fac = split_linear_factors(op.coeffs[0], "k")
    except (NotSplitOverRationals, ValueError):
        return None
    best = None
    for (mm, b), mult in fac.multiplicities().items():
        if b == 1 and mm > 0 and (best is None or mult > best[1]):
            best = (mm, mult)
    if best is None:
        return None
    return best[0], best[1] + 1


def build_pair(
    F: HyperTerm,
    op: DifferenceOperator,
    R: RationalFunction,
    m: int = 12,
    grid: int = 12,
    cross_check: bool = False,
) -> WZPair:
    if op.order != 1:
        raise ValueError(f"build_pair needs a linear operator, got order {op.order}")
    p0, p1 = op.coeffs
    q = build_q(p0, p1, m)
    Fbar = q * F
    Gbar = q * F * (-R / p0)
    device = Fbar / Fbar.specialize("k", 0)
    pair = WZPair(Fbar, Gbar, q, device, op)
    report = certify_pair(pair, grid)
    if not report.passed:
        raise CertificationFailed(f"pair identity failed: {report}")
    if cross_check:
        res = creative_telescoping(Fbar, max_order=1)
        if not res.operator.equals_up_to_scalar(DifferenceOperator((Poly.const(-1), Poly.const(1)))):
            raise CertificationFailed(f"telescoping Fbar gave {res.operator}, not K - 1")
    return pair


def certify_pair(pair: WZPair, grid: int = 12) -> PairReport:
    """Check (K-1)Fbar = (N-1)Gbar as a rational identity and on the grid."""
    Fbar, Gbar = pair.Fbar, pair.Gbar
    note = ""
    try:
        S = (Gbar / Fbar).as_rational()
        lhs = Fbar.ratio("k") - 1
        rhs = S.shift("n", 1) * Fbar.ratio("n") - S
        rational_ok = lhs == rhs
    except NotRational as exc:
        rational_ok = False
        note = str(exc)
    report = PairReport(passed=False, rational_identity=rational_ok, note=note)
    for n in range(grid + 1):
        for k in range(grid + 1):
            vals = (Fbar.eval(n, k + 1), Fbar.eval(n, k), Gbar.eval(n + 1, k), Gbar.eval(n, k))
            if any(v is POLE for v in vals):
                report.pole_points.append((n, k))
                continue
            report.grid_points += 1
            if vals[0] - vals[1] != vals[2] - vals[3]:
                report.mismatches.append((n, k))
    report.passed = rational_ok and not report.mismatches
    return report


def _splits(p: Poly) -> bool:
    if p.is_zero() or p.is_constant():
        return True
    try:
        split_linear_factors(p, "k")
    except NotSplitOverRationals:
        return False
    return True


def is_wz_device(
    w: HyperTerm,
    F: HyperTerm,
    interval: Tuple[int, int] = (0, 12),
    max_order: int = 6,
) -> DeviceReport:
    """The three device conditions, plus whether the operator splits over Q."""
    s, t = interval
    # structural: both shift ratios exist by construction of HyperTerm
    hyper = True
    try:
        w.ratio("n")
        w.ratio("k")
    except ZeroDivisionError:
        hyper = False
    w0 = all(w.eval(n, 0) == 1 for n in range(s, t + 1))
    try:
        res: Optional[TelescopingResult] = creative_telescoping(F * w, max_order=max_order)
    except OrderExceeded:
        res = None
    order = res.operator.order if res else None
    splitting = bool(res) and all(_splits(c) for c in res.operator.coeffs)
    passed = hyper and w0 and order is not None and order <= 1
    note = "trivial order-0 operator" if order == 0 else ""
    return DeviceReport(passed, hyper, w0, order, res.operator if res else None, splitting, note)


@dataclass
class DerivedPair:
    raw: TelescopingResult
    collapsed: Optional[TelescopingResult]
    collapse: Optional[Tuple[int, int]]
    pair: WZPair


def derive_pair(
    F: HyperTerm,
    collapse: Optional[Tuple[int, int]] = None,
    max_order: int = 6,
    m: int = 12,
    grid: int = 12,
    cross_check: bool = False,
) -> DerivedPair:
    """Telescope F, collapse the degree when asked (or when the order exceeds 1), build the pair.

    With ``collapse = (a, m)`` the pair is built from F / (1/a)_k^(m-1), as in the
    hand derivations; otherwise from F directly when its operator is already linear.
    """
    raw = creative_telescoping(F, max_order=max_order)
    if collapse is None and raw.operator.order > 1:
        collapse = infer_collapse(raw.operator)
        if collapse is None:
            raise ValueError(f"operator of order {raw.operator.order} and no collapse parameters")
    collapsed = None
    source, res = F, raw
    if collapse is not None:
        source = degree_collapse(F, *collapse)
        collapsed = res = creative_telescoping(source, max_order=max_order)
    if res.operator.order > 1:
        raise ValueError(f"operator still has order {res.operator.order} after collapse")
    if res.operator.order == 0:
        # trivial operator p0: treat as p0*K - p0 acting on F*(0)_k, i.e. F itself is summable
        raise ValueError("order-0 operator: the term is Gosper-summable, no pair needed")
    pair = build_pair(source, res.operator, res.certificate, m=m, grid=grid, cross_check=cross_check)
    return DerivedPair(raw, collapsed, collapse, pair)
