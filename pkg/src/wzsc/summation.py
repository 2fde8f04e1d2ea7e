"""Gosper's algorithm and creative telescoping in the (operator in k,
telescoping in n) orientation.

For a term F(n, k) we look for polynomials p_0(k), ..., p_d(k) and a rational
certificate R(n, k) such that, with G = R*F,

    sum_j p_j(k) F(n, k+j) = G(n+1, k) - G(n, k).

Order d = 0 with p_0 = 1 is plain Gosper summation in n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from . import _upoly as up
from .poly import (
    ONE,
    ZERO,
    Poly,
    RationalFunction,
    _gcd,
    content_normalize,
    divexact,
    poly_lcm,
)
from .term import POLE, HyperTerm


class OrderExceeded(RuntimeError):
    """No telescoping operator of order <= max_order exists."""


@dataclass(frozen=True)
class DifferenceOperator:
    """sum_j coeffs[j](k) K^j."""

    coeffs: Tuple[Poly, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1].is_zero():
            raise ValueError("leading coefficient of a difference operator must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def normalized(self) -> "DifferenceOperator":
        return DifferenceOperator(tuple(content_normalize(self.coeffs)))

    def equals_up_to_scalar(self, other: "DifferenceOperator") -> bool:
        return self.order == other.order and self.normalized() == other.normalized()

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            shift = "" if j == 0 else ("K" if j == 1 else f"K^{j}")
            parts.append(f"({c})" + (f"*{shift}" if shift else ""))
        return " + ".join(reversed(parts))


@dataclass(frozen=True)
class GosperCertificate:
    certificate: RationalFunction
    term: HyperTerm  # G = certificate * F


@dataclass(frozen=True)
class TelescopingResult:
    operator: DifferenceOperator
    certificate: RationalFunction

    def g_term(self, F: HyperTerm) -> HyperTerm:
        return F * self.certificate


@dataclass
class CTReport:
    passed: bool
    rational_identity: bool
    grid_points: int = 0
    pole_points: List[Tuple[int, int]] = field(default_factory=list)
    mismatches: List[Tuple[int, int]] = field(default_factory=list)


# normal form ---------------------------------------------------------------------


def _fujiwara(p: Poly) -> int:
    """Integer upper bound on the absolute values of the roots of a univariate poly in n."""
    cs = p.coeffs("n")
    d = max(cs)
    if d <= 0:
        return 0
    lead = abs(cs[d].constant_value())
    best = 0.0
    for i in range(1, d + 1):
        c = cs.get(d - i)
        if c is None or c.is_zero():
            continue
        v = float(abs(c.constant_value()) / lead) ** (1.0 / i)
        if i == d:
            v = (v**i / 2) ** (1.0 / i)
        best = max(best, v)
    return int(math.ceil(2 * best)) + 1


def _specialization_point(*polys: Poly) -> int:
    for k0 in range(1, 1000):
        if all(not p.lc("n").subs("k", k0).is_zero() for p in polys):
            return k0
    raise RuntimeError("no good specialization point found")  # pragma: no cover


def dispersion_set(a: Poly, b: Poly) -> List[int]:
    """Nonnegative integers h with deg_n gcd(a(n), b(n+h)) > 0 over Q(k)."""
    if a.degree("n") <= 0 or b.degree("n") <= 0:
        return []
    k0 = _specialization_point(a, b)
    a0 = a.subs("k", k0)
    b0 = b.subs("k", k0)
    bound = _fujiwara(a0) + _fujiwara(b0)
    out = []
    for h in range(0, bound + 1):
        if _gcd(a0, b0.shift("n", h)).degree("n") <= 0:
            continue
        if _gcd(a, b.shift("n", h)).degree("n") > 0:
            out.append(h)
    return out


def gosper_normal_form(r: RationalFunction) -> Tuple[Poly, Poly, Poly]:
    """(a, b, c) with r = a(n)/b(n) * c(n+1)/c(n) and gcd(a(n), b(n+h)) = 1 for h >= 0."""
    a, b = r.numer, r.denom
    c = ONE
    for h in dispersion_set(a, b):
        g = _gcd(a, b.shift("n", h))
        if g.degree("n") <= 0:
            continue
        a = divexact(a, g)
        b = divexact(b, g.shift("n", -h))
        for i in range(1, h + 1):
            c = c * g.shift("n", -i)
    return a, b, c


# fraction-free linear algebra over Z[k] ------------------------------------------------


def _poly_to_rows(entries: Sequence[Sequence[Poly]]) -> List[List[up.UPoly]]:
    """Scale each row to integer coefficients and convert entries to dense k-polys."""
    rows = []
    for row in entries:
        den = 1
        for p in row:
            for v in p.terms.values():
                den = den * v.denominator // math.gcd(den, v.denominator)
        out = []
        for p in row:
            dense: List[int] = []
            for (i, j), v in p.terms.items():
                if i:
                    raise ValueError("matrix entry depends on n")
                while len(dense) <= j:
                    dense.append(0)
                dense[j] = int(v * den)
            out.append(up.trim(dense))
        rows.append(out)
    return rows


def _row_echelon(M: List[List[up.UPoly]]) -> List[int]:
    """Bareiss elimination in place; returns the pivot columns."""
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots: List[int] = []
    prev: up.UPoly = [1]
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        cand = [i for i in range(r, nrows) if M[i][col]]
        if not cand:
            continue
        best = min(cand, key=lambda i: (len(M[i][col]), max(abs(v) for v in M[i][col])))
        M[r], M[best] = M[best], M[r]
        piv = M[r][col]
        for i in range(r + 1, nrows):
            lead = M[i][col]
            row = M[i]
            if not lead:
                M[i] = [up.divexact(up.mul(piv, row[j]), prev) if row[j] else [] for j in range(ncols)]
                continue
            top = M[r]
            M[i] = [
                up.divexact(up.sub(up.mul(piv, row[j]), up.mul(lead, top[j])), prev)
                if j > col
                else []
                for j in range(ncols)
            ]
        prev = piv
        pivots.append(col)
        r += 1
    return pivots


def _null_vector(M: List[List[up.UPoly]], pivots: List[int], free: int) -> List[up.UPoly]:
    ncols = len(M[0])
    v: List[up.UPoly] = [[] for _ in range(ncols)]
    v[free] = [1]
    for i in range(len(pivots) - 1, -1, -1):
        pc = pivots[i]
        row = M[i]
        s: up.UPoly = []
        for j in range(pc + 1, ncols):
            if row[j] and v[j]:
                s = up.add(s, up.mul(row[j], v[j]))
        piv = row[pc]
        v = [up.mul(x, piv) for x in v]
        v[pc] = up.neg(s)
    g = reduce(up.gcd, (x for x in v if x), [])
    return [up.divexact(x, g) if x else [] for x in v]


def _nullspace_vectors(M: List[List[up.UPoly]]):
    ncols = len(M[0])
    pivots = _row_echelon(M)
    pset = set(pivots)
    for f in range(ncols):
        if f not in pset:
            yield _null_vector(M, pivots, f)


def _to_k_poly(a: up.UPoly) -> Poly:
    return Poly.from_univariate("k", a)


# parameterized Gosper ---------------------------------------------------------------


@dataclass
class _Setup:
    B: Poly
    Q: List[Poly]
    a: Poly
    b: Poly
    c: Poly


def _shift_ratios(F: HyperTerm, d: int) -> List[RationalFunction]:
    rho1 = F.ratio("k")
    out = [RationalFunction(1)]
    for j in range(1, d + 1):
        out.append(out[-1] * rho1.shift("k", j - 1))
    return out


def _setup(F: HyperTerm, d: int) -> _Setup:
    rhos = _shift_ratios(F, d)
    B = reduce(poly_lcm, (r.denom for r in rhos), ONE)
    Q = [r.numer * divexact(B, r.denom) for r in rhos]
    r = F.ratio("n") * RationalFunction(B, B.shift("n", 1))
    a, b, c = gosper_normal_form(r)
    return _Setup(B, Q, a, b, c)


def _degree_bound(a: Poly, bm1: Poly, rhs_degree: int) -> int:
    da, db = a.degree("n"), bm1.degree("n")
    la, lb = a.lc("n"), bm1.lc("n")
    if da != db or la != lb:
        return rhs_degree - max(da, db)
    e = rhs_degree - da + 1
    alpha = a.coeff("n", da - 1)
    beta = bm1.coeff("n", da - 1)
    t = RationalFunction(beta - alpha, la)
    if t.is_polynomial() and t.numer.is_constant():
        v = t.numer.constant_value()
        if v.denominator == 1 and v >= 0:
            e = max(e, int(v))
    return e


def _solve(setup: _Setup, d: int):
    """Return (p list of Poly in k, x as Poly in n,k) or None."""
    a, b, c = setup.a, setup.b, setup.c
    bm1 = b.shift("n", -1)
    S = [c * q for q in setup.Q[: d + 1]]
    rhs_deg = max(s.degree("n") for s in S)
    e = _degree_bound(a, bm1, rhs_deg)
    columns: List[Dict[int, Poly]] = []
    for s in S:
        columns.append((-s).coeffs("n"))
    nvar = Poly.var("n")
    for i in range(max(e, -1) + 1):
        col = a * (nvar + 1) ** i - bm1 * nvar**i
        columns.append(col.coeffs("n"))
    maxdeg = max((max(cl) for cl in columns if cl), default=-1)
    entries = [[cl.get(t, ZERO) for cl in columns] for t in range(maxdeg + 1)]
    if not entries:
        return None
    M = _poly_to_rows(entries)
    for v in _nullspace_vectors(M):
        p = v[: d + 1]
        if not any(p):
            continue
        ps = [_to_k_poly(x) for x in p]
        xs = [_to_k_poly(x) for x in v[d + 1 :]]
        X = ZERO
        for i, xi in enumerate(xs):
            X = X + xi * nvar**i
        return ps, X
    return None


def _certificate(setup: _Setup, X: Poly) -> RationalFunction:
    bm1 = setup.b.shift("n", -1)
    return RationalFunction(bm1 * X, setup.c * setup.B)


def creative_telescoping(F: HyperTerm, max_order: int = 6, min_order: int = 0) -> TelescopingResult:
    """Minimal-order telescoping operator in k with certificate R(n, k)."""
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    for d in range(min_order, max_order + 1):
        setup = _setup(F, d)
        sol = _solve(setup, d)
        if sol is None:
            continue
        ps, X = sol
        # strip the common polynomial factor of the p_j, then the scalar content
        g = reduce(_gcd, ps, ZERO)
        ps = [divexact(p, g) for p in ps]
        normed = content_normalize(ps)
        scale = ps[-1].leading_coefficient() / normed[-1].leading_coefficient()
        R = _certificate(setup, X) * RationalFunction(1, g * scale)
        return TelescopingResult(DifferenceOperator(tuple(normed)), R)
    raise OrderExceeded(f"no telescoping operator of order <= {max_order}")


def certificate_for(F: HyperTerm, op: DifferenceOperator) -> Optional[RationalFunction]:
    """Certificate R with op F = (N-1)(R F) for a given operator, or None."""
    d = op.order
    setup = _setup(F, d)
    a, b, c = setup.a, setup.b, setup.c
    bm1 = b.shift("n", -1)
    rhs = ZERO
    for q, p in zip(setup.Q, op.coeffs):
        rhs = rhs + c * q * p
    e = _degree_bound(a, bm1, rhs.degree("n"))
    nvar = Poly.var("n")
    columns = [(-rhs).coeffs("n")]
    for i in range(max(e, -1) + 1):
        columns.append((a * (nvar + 1) ** i - bm1 * nvar**i).coeffs("n"))
    maxdeg = max((max(cl) for cl in columns if cl), default=-1)
    if maxdeg < 0:
        return RationalFunction(0)
    M = _poly_to_rows([[cl.get(t, ZERO) for cl in columns] for t in range(maxdeg + 1)])
    for v in _nullspace_vectors(M):
        if not v[0]:
            continue
        X = ZERO
        for i, xi in enumerate(v[1:]):
            X = X + _to_k_poly(xi) * nvar**i
        return _certificate(setup, X) * RationalFunction(1, _to_k_poly(v[0]))
    return None


def gosper(F: HyperTerm) -> Optional[GosperCertificate]:
    """Hypergeometric antidifference G = R*F with F(n) = G(n+1) - G(n), or None."""
    if F.depends_on("k"):
        raise ValueError("gosper expects a term in n only")
    setup = _setup(F, 0)
    sol = _solve(setup, 0)
    if sol is None:
        return None
    (p0,), X = sol
    R = _certificate(setup, X) * RationalFunction(1, p0)
    return GosperCertificate(R, F * R)


# verification ----------------------------------------------------------------------


def ct_identity_holds(F: HyperTerm, op: DifferenceOperator, R: RationalFunction) -> bool:
    rhos = _shift_ratios(F, op.order)
    lhs = RationalFunction(0)
    for p, rho in zip(op.coeffs, rhos):
        if not p.is_zero():
            lhs = lhs + rho * p
    rhs = R.shift("n", 1) * F.ratio("n") - R
    return lhs == rhs


def verify_ct(F: HyperTerm, result: TelescopingResult, grid: int = 12) -> CTReport:
    op = result.operator
    ok_rational = ct_identity_holds(F, op, result.certificate)
    G = F * result.certificate
    report = CTReport(passed=False, rational_identity=ok_rational)
    for n in range(grid + 1):
        for k in range(grid + 1):
            vals = [F.eval(n, k + j) for j in range(op.order + 1)]
            g1, g0 = G.eval(n + 1, k), G.eval(n, k)
            if any(v is POLE for v in vals) or g1 is POLE or g0 is POLE:
                report.pole_points.append((n, k))
                continue
            lhs = sum((p(0, k) * v for p, v in zip(op.coeffs, vals)), Fraction(0))
            report.grid_points += 1
            if lhs != g1 - g0:
                report.mismatches.append((n, k))
    report.passed = ok_rational and not report.mismatches
    return report


def verify_gosper(F: HyperTerm, cert: GosperCertificate) -> bool:
    R = cert.certificate
    return R.shift("n", 1) * F.ratio("n") - R == RationalFunction(1)
