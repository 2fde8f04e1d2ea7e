"""Dense univariate polynomials over Z as lists of ints (index = degree).

Internal helpers for fraction-free elimination; the zero polynomial is [].
"""

from __future__ import annotations

import math
from functools import reduce
from typing import List, Sequence

UPoly = List[int]


def trim(a: List[int]) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: Sequence[int], b: Sequence[int]) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return trim(out)


def sub(a: Sequence[int], b: Sequence[int]) -> UPoly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return trim(out)


def neg(a: Sequence[int]) -> UPoly:
    return [-v for v in a]


def scale(a: Sequence[int], c: int) -> UPoly:
    if c == 0:
        return []
    return [v * c for v in a]


def mul(a: Sequence[int], b: Sequence[int]) -> UPoly:
    if not a or not b:
        return []
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    if len(a) > 16 and len(b) > 16:
        return _kronecker_mul(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> UPoly:
    # pack coefficients into one big integer, multiply, unpack (signed digits)
    bound = max(abs(v) for v in a) * max(abs(v) for v in b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    A = _pack(a, bits)
    B = _pack(b, bits)
    return _unpack(A * B, bits, len(a) + len(b) - 1)


def _pack(a: Sequence[int], bits: int) -> int:
    acc = 0
    for v in reversed(a):
        acc = (acc << bits) + v
    return acc


def _unpack(x: int, bits: int, count: int) -> UPoly:
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    for _ in range(count):
        d = x & mask
        if d >= half:
            d -= 1 << bits
        out.append(d)
        x = (x - d) >> bits
    return trim(out)


def divexact(a: Sequence[int], b: Sequence[int]) -> UPoly:
    """a / b, which must divide exactly in Z[x]."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    if len(b) == 1:
        c = b[0]
        out = []
        for v in a:
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError("inexact division")
            out.append(q)
        return out
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c, rem = divmod(r[i + db], lb)
        if rem:
            raise ArithmeticError("inexact division")
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] -= c * b[j]
    if any(r[:db]):
        raise ArithmeticError("inexact division")
    return trim(q)


def content(a: Sequence[int]) -> int:
    return reduce(math.gcd, a, 0)


def primitive(a: Sequence[int]) -> UPoly:
    c = content(a)
    if c == 0:
        return []
    if a[-1] < 0:
        c = -c
    return [v // c for v in a]


def prem(a: Sequence[int], b: Sequence[int]) -> UPoly:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        trim(r)
    return r


def gcd(a: Sequence[int], b: Sequence[int]) -> UPoly:
    """Primitive gcd with positive leading coefficient (content gcd included)."""
    a, b = trim(list(a)), trim(list(b))
    if not a:
        return primitive(b) if b else []
    if not b:
        return primitive(a)
    c = math.gcd(content(a), content(b))
    pa, pb = primitive(a), primitive(b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb and len(pb) > 1:
        r = prem(pa, pb)
        pa, pb = pb, primitive(r) if r else []
    g = pa if not pb else [1]
    g = primitive(g)
    return scale(g, c)


def evaluate(a: Sequence[int], x: int) -> int:
    acc = 0
    for v in reversed(a):
        acc = acc * x + v
    return acc
