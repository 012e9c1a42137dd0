"""Exact p-adic helpers for p in {2, 3}.

The valuation of zero is ``INF`` (``math.inf``), so the usual saturating
rules come for free: ``INF + e == INF``, ``min(INF, e) == e`` and an
exponent such as ``k - INF`` clamps to 0 under ``max(..., 0)``.
"""

from __future__ import annotations

import math

from .errors import NotAUnit

INF = math.inf

Valuation = int | float  # float only ever holds INF


def vp(x: int, p: int) -> Valuation:
    """Largest e with p**e dividing x; INF for x == 0. Sign is ignored."""
    if x == 0:
        return INF
    x = abs(x)
    if p == 2:
        return (x & -x).bit_length() - 1
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def vp_star(x: int, p: int) -> Valuation:
    """max(vp(x - 1), vp(x + 1)): how close x sits to +1 or -1, p-adically."""
    return max(vp(x - 1, p), vp(x + 1, p))


def digit_sum(x: int, p: int) -> int:
    if x < 0:
        raise ValueError("digit_sum needs x >= 0")
    total = 0
    while x:
        x, r = divmod(x, p)
        total += r
    return total


def factorial_valuation(x: int, p: int) -> int:
    """vp(x!) by Legendre's formula, (x - s_p(x)) / (p - 1)."""
    if x < 0:
        raise ValueError("factorial_valuation needs x >= 0")
    return (x - digit_sum(x, p)) // (p - 1)


def inv_mod(x: int, m: int) -> int:
    try:
        return pow(x, -1, m)
    except ValueError:
        raise NotAUnit(f"{x} is not invertible modulo {m}") from None
