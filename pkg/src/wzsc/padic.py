"""The p-adic gamma function modulo p^N and the identities used with it.

Gamma_p(k) = (-1)^k * prod(j for 0 < j < k if j % p), extended to Z_p by
continuity, so Gamma_p(x) mod p^N only depends on x mod p^N.

The fast evaluator splits [0, k) along the base-p digits of k. For each
level L it keeps U_L(m), the product of the units in [m p^L, (m+1) p^L), as
a polynomial in m. Its coefficient of m^j is divisible by p^j, so truncating
below degree N is exact modulo p^N for every integer m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Sequence

from .exact import (
    NotPadicInteger,
    PadicResidue,
    RationalLike,
    as_rational,
    padic_val,
    residue_mod,
)

MAX_EXPONENT = 64


class InfeasiblePrecision(ValueError):
    """Requested p-adic precision is beyond the supported working exponent."""


def a0(x: RationalLike, p: int) -> int:
    """Smallest positive residue of x modulo p, in [1, p]."""
    r = residue_mod(x, p, 1).value
    return r if r else p


def _require_odd_prime_power(p: int, N: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    if N < 1:
        raise ValueError("exponent must be positive")
    if N > MAX_EXPONENT:
        raise InfeasiblePrecision(f"exponent {N} exceeds {MAX_EXPONENT}")


def _poly_mul_trunc(a: Sequence[int], b: Sequence[int], N: int, M: int) -> List[int]:
    out = [0] * N
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), N - i)):
                out[i + j] = (out[i + j] + x * b[j]) % M
    return out


def _taylor_scaled(u: Sequence[int], i: int, p: int, N: int, M: int) -> List[int]:
    """Coefficients in m of u(p*m + i), truncated below degree N."""
    out = [0] * N
    for j, c in enumerate(u):
        if not c:
            continue
        # (p m + i)^j = sum_l C(j, l) p^l m^l i^(j-l)
        for l in range(min(j, N - 1) + 1):
            out[l] = (out[l] + c * comb(j, l) * pow(p, l, M) * pow(i, j - l, M)) % M
    return out


def _horner(u: Sequence[int], m: int, M: int) -> int:
    acc = 0
    for c in reversed(u):
        acc = (acc * m + c) % M
    return acc


class GammaPEvaluator:
    """Gamma_p modulo p^N with precomputed block polynomials."""

    def __init__(self, p: int, N: int):
        _require_odd_prime_power(p, N)
        self.p = p
        self.N = N
        self.M = p**N
        self._levels = self._build_levels()

    def _build_levels(self) -> Dict[int, List[int]]:
        p, N, M = self.p, self.N, self.M
        levels: Dict[int, List[int]] = {}
        if N < 2:
            return levels
        # f(x) = prod_{j=1}^{p-1} (x + j), then U_1(m) = f(p m)
        f = [1] + [0] * (N - 1)
        for j in range(1, p):
            f = _poly_mul_trunc(f, [j, 1], N, M)
        levels[1] = [f[l] * pow(p, l, M) % M for l in range(N)]
        for L in range(1, N - 1):
            u = levels[L]
            acc = [1] + [0] * (N - 1)
            for i in range(p):
                acc = _poly_mul_trunc(acc, _taylor_scaled(u, i, p, N, M), N, M)
            levels[L + 1] = acc
        return levels

    def unit_product(self, k: int) -> int:
        """prod(j for 0 < j < k if j % p) mod p^N, for 0 <= k < p^N."""
        p, M = self.p, self.M
        digits = []
        t = k
        for _ in range(self.N):
            digits.append(t % p)
            t //= p
        acc = 1
        offset = 0
        for L in range(self.N - 1, 0, -1):
            d = digits[L]
            if d:
                u = self._levels[L]
                base = offset // p**L
                for t in range(d):
                    acc = acc * _horner(u, base + t, M) % M
                offset += d * p**L
        for j in range(offset, offset + digits[0]):
            if j % p:
                acc = acc * j % M
        return acc

    def __call__(self, x: RationalLike) -> PadicResidue:
        k = residue_mod(x, self.p, self.N).value
        val = self.unit_product(k)
        if k % 2:
            val = -val
        return PadicResidue(self.p, self.N, val)


@lru_cache(maxsize=256)
def _evaluator(p: int, N: int) -> GammaPEvaluator:
    return GammaPEvaluator(p, N)


def gamma_p(x: RationalLike, p: int, N: int) -> PadicResidue:
    """Gamma_p(x) mod p^N for x in Z_p."""
    return _evaluator(p, N)(x)


def gamma_p_naive(x: RationalLike, p: int, N: int) -> PadicResidue:
    """Direct product over the least nonnegative representative; Theta(p^N)."""
    _require_odd_prime_power(p, N)
    M = p**N
    k = residue_mod(x, p, N).value
    acc = 1
    for j in range(1, k):
        if j % p:
            acc = acc * j % M
    return PadicResidue(p, N, -acc if k % 2 else acc)


# logarithmic derivatives -----------------------------------------------------------


@dataclass(frozen=True)
class LogDerivative:
    a: Fraction
    p: int
    k: int
    residue: PadicResidue


def gk_expansion(a: RationalLike, p: int, t: int, r: int) -> List[PadicResidue]:
    """c_j = G_j(a)/j! for j = 0..t, from Gamma_p(a + b p^r)/Gamma_p(a) at b = 1..t.

    Assumes the truncated expansion holds modulo p^((t+1) r); c_j is returned
    modulo p^((t+1-j) r), the precision the expansion determines it to.
    """
    if p < 5:
        raise ValueError("the expansion needs p >= 5")
    if t < 1 or r < 1:
        raise ValueError("t and r must be positive")
    a = as_rational(a)
    if a.denominator % p == 0:
        raise NotPadicInteger(f"{a} is not in Z_p")
    W = (t + 1) * r
    _require_odd_prime_power(p, W)
    M = p**W
    pr = p**r
    g_a = gamma_p(a, p, W)
    ds = []
    for b in range(1, t + 1):
        ratio = (gamma_p(a + b * pr, p, W) / g_a).value
        diff = (ratio - 1) % M
        if diff % pr:
            raise ArithmeticError(f"Gamma_p ratio at b={b} is not 1 mod p^{r}")
        ds.append(diff // pr)
    # D_b = sum_j y_j b^j (mod p^(t r)) with y_j = c_j p^((j-1) r)
    ys = _solve_vandermonde(list(range(1, t + 1)), ds)
    Mt = p ** (t * r)
    out = [PadicResidue(p, W, 1)]
    for j, y in enumerate(ys, start=1):
        yv = residue_mod(y, p, t * r).value
        scale = p ** ((j - 1) * r)
        if yv % scale:
            raise ArithmeticError(f"coefficient {j} is not divisible by p^{(j - 1) * r}")
        out.append(PadicResidue(p, (t + 1 - j) * r, (yv % Mt) // scale))
    return out


def _solve_vandermonde(bs: List[int], rhs: List[int]) -> List[Fraction]:
    """Solve sum_j x_j b^j = rhs_b (j = 1..len(bs)) exactly over Q."""
    n = len(bs)
    rows = [[Fraction(b**j) for j in range(1, n + 1)] + [Fraction(v)] for b, v in zip(bs, rhs)]
    for c in range(n):
        piv = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        pv = rows[c][c]
        rows[c] = [v / pv for v in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return [rows[i][n] for i in range(n)]


def gk_extract(a: RationalLike, p: int, k: int, r: int) -> LogDerivative:
    """G_k(a) mod p^r for k in {0, 1, 2}, from the t = 2 expansion with b = 1, 2."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    if 3 * r > MAX_EXPONENT:
        raise InfeasiblePrecision(f"working exponent {3 * r} exceeds {MAX_EXPONENT}")
    c = gk_expansion(a, p, 2, r)
    value = c[k].value * factorial(k)
    return LogDerivative(as_rational(a), p, k, PadicResidue(p, r, value))


def gk_finite_difference(a: RationalLike, p: int, r: int) -> PadicResidue:
    """G_1(a) mod p^r as (Gamma_p(a + p^r)/Gamma_p(a) - 1)/p^r, read modulo p^(2r)."""
    W = 2 * r
    ratio = (gamma_p(as_rational(a) + p**r, p, W) / gamma_p(a, p, W)).value
    return PadicResidue(p, r, ((ratio - 1) % p**W) // p**r)


def forward_expansion_holds(a: RationalLike, b: RationalLike, p: int, t: int, r: int,
                   coeffs: Sequence[PadicResidue]) -> bool:
    """Gamma_p(a + b p^r)/Gamma_p(a) == sum_{j<=t} c_j (b p^r)^j mod p^((t+1) r)."""
    W = (t + 1) * r
    a, b = as_rational(a), as_rational(b)
    lhs = gamma_p(a + b * p**r, p, W) / gamma_p(a, p, W)
    rhs = PadicResidue(p, W, 0)
    for j in range(t + 1):
        rhs = rhs + PadicResidue(p, W, coeffs[j].value) * (b * p**r) ** j
    return lhs == rhs


# identity stock ------------------------------------------------------------------------


def ratio_identity_holds(s: RationalLike, p: int, N: int) -> bool:
    """Gamma_p(s+1)/Gamma_p(s) = -s for units s, and -1 otherwise."""
    s = as_rational(s)
    q = gamma_p(s + 1, p, N) / gamma_p(s, p, N)
    expected = -s if padic_val(s, p) == 0 else Fraction(-1)
    return q == residue_mod(expected, p, N)


def reflection_holds(x: RationalLike, p: int, N: int) -> bool:
    """Gamma_p(x) Gamma_p(1-x) = (-1)^a0(x)."""
    x = as_rational(x)
    lhs = gamma_p(x, p, N) * gamma_p(1 - x, p, N)
    return lhs == (-1) ** a0(x, p)


def shifted_ratio_holds(alpha: RationalLike, k: int, p: int, N: int) -> bool:
    """Gamma_p(alpha+k)/Gamma_p(alpha) = (-1)^k prod of the unit factors of (alpha)_k."""
    alpha = as_rational(alpha)
    lhs = gamma_p(alpha + k, p, N) / gamma_p(alpha, p, N)
    prod = Fraction(1)
    full = Fraction(1)
    for j in range(k):
        full *= alpha + j
        if padic_val(alpha + j, p) == 0:
            prod *= alpha + j
    ok = lhs == residue_mod((-1) ** k * prod, p, N)
    if padic_val(full, p) == 0:
        ok = ok and lhs == residue_mod((-1) ** k * full, p, N)
    return ok


def half_square_holds(p: int, N: int) -> bool:
    """Gamma_p(1/2)^2 = (-1)^((p+1)/2)."""
    return gamma_p(Fraction(1, 2), p, N) ** 2 == (-1) ** ((p + 1) // 2)


def _poch(x: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for j in range(m):
        out *= x + j
    return out


def pochhammer_gamma_identities(p: int, N: int) -> Dict[str, bool]:
    """Five exact Pochhammer / Gamma_p-quotient identities, compared mod p^N."""
    G = lambda x: gamma_p(x, p, N)  # noqa: E731
    R = lambda q: residue_mod(q, p, N)  # noqa: E731
    h = Fraction(1, 2)
    s = (p - 1) // 2
    out = {}
    lhs = R(_poch(h, p - 1))
    out["half_p_minus_1"] = (
        lhs == R(Fraction(p, 2)) * G(h + p - 1) / G(h)
        and lhs == R(Fraction(-p, 2 * p - 1)) * G(h + p) / G(h)
    )
    out["one_s"] = R(_poch(Fraction(1), s)) == (-1) ** ((p + 1) // 2) * G(Fraction(p + 1, 2))
    out["one_s_squared"] = R(_poch(Fraction(1), s) ** 2) == G(Fraction(p + 1, 2)) ** 2
    q, t = Fraction(1, 4), Fraction(3, 4)
    shift_q = Fraction(-1, 4) + Fraction(p, 2)
    shift_t = Fraction(1, 4) + Fraction(p, 2)
    if p % 4 == 1:
        rq = R(Fraction(p, 4)) * G(shift_q) / G(q)
        rt = G(shift_t) / G(t)
    else:
        rq = -G(shift_q) / G(q)
        rt = -R(Fraction(p, 4)) * G(shift_t) / G(t)
    out["quarter_s"] = R(_poch(q, s)) == rq
    out["three_quarter_s"] = R(_poch(t, s)) == rt
    return out


def half_quotient_holds(p: int) -> bool:
    """Gamma_p(1/2+p)/Gamma_p(1/2) * Gamma_p(1/2)^2 / Gamma_p((1+p)/2)^2 = 1 mod p^3."""
    h = Fraction(1, 2)
    v = gamma_p(h + p, p, 3) / gamma_p(h, p, 3) * gamma_p(h, p, 3) ** 2 / gamma_p(Fraction(1 + p, 2), p, 3) ** 2
    return v == 1


def a0_parity_holds(x: RationalLike, p: int) -> bool:
    x = as_rational(x)
    return a0(x, p) % 2 == a0(1 - x, p) % 2


def mod_trick_holds(p: int, n: int, m: int) -> bool:
    """p^(n-1) (1 + p m) = p^(n-1) mod p^n."""
    M = p**n
    return (p ** (n - 1) * (1 + p * m) - p ** (n - 1)) % M == 0


def two_thirds_sign(p: int) -> int:
    """(-1)^a0(2/3); equals -1 when p = 1 mod 6."""
    return (-1) ** a0(Fraction(2, 3), p)


def gk_identities(a: RationalLike, p: int, r: int) -> Dict[str, bool]:
    """G_1(a) = G_1(1-a) and G_2(a) + G_2(1-a) = 2 G_1(a)^2, modulo p^r."""
    a = as_rational(a)
    g1a = gk_extract(a, p, 1, r).residue
    g1b = gk_extract(1 - a, p, 1, r).residue
    g2a = gk_extract(a, p, 2, r).residue
    g2b = gk_extract(1 - a, p, 2, r).residue
    return {
        "g1_symmetric": g1a == g1b,
        "g2_sum": g2a + g2b == 2 * g1a * g1a,
    }


def g_at_zero_identities(p: int, r: int) -> Dict[str, bool]:
    """G_1(0)^2 = G_2(0) and G_2(0) = G_2(1), modulo p^r."""
    g10 = gk_extract(0, p, 1, r).residue
    g20 = gk_extract(0, p, 2, r).residue
    g21 = gk_extract(1, p, 2, r).residue
    return {"g1_squared": g10 * g10 == g20, "g2_0_equals_1": g20 == g21}


def binomial_expansions_hold(s: RationalLike, rr: RationalLike, p: int) -> Dict[str, bool]:
    """Square and fourth power of 1 + G_1 r p + G_2 r^2 p^2/2, truncated mod p^3."""
    s, rr = as_rational(s), as_rational(rr)
    c = gk_expansion(s, p, 2, 1)
    g1 = PadicResidue(p, 3, c[1].value)
    g2 = PadicResidue(p, 3, 2 * c[2].value)
    P = PadicResidue(p, 3, p)
    base = 1 + g1 * rr * P + g2 * (rr * rr / 2) * P * P
    sq = 1 + g1 * 2 * rr * P + g1 * g1 * rr * rr * P * P + g2 * rr * rr * P * P
    fourth = 1 + g1 * 4 * rr * P + g1 * g1 * 6 * rr * rr * P * P + g2 * 2 * rr * rr * P * P
    return {"square": base**2 == sq, "fourth": base**4 == fourth}
