"""Chebyshev polynomials of the first kind modulo p**k.

Scalar evaluation runs a doubling ladder on the pair (T_j, T_{j+1}):

    T_{2j}   = 2 T_j^2 - 1
    T_{2j+1} = 2 T_j T_{j+1} - x
    T_{2j+2} = 2 T_{j+1}^2 - 1

so each bit of n costs exactly two ring multiplications.  The same ladder
is vectorised over numpy ``uint64`` arrays for moduli up to 2**32, where a
product of two residues still fits in 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd

import numpy as np

from .errors import (
    DegreeOverflow,
    EvenDegree,
    InvalidModulus,
    NonIntegerResult,
)

MAX_DEGREE = 2**63 - 1
VECTOR_MODULUS_LIMIT = 2**32


@dataclass(frozen=True)
class RingSpec:
    """The residue ring Z/p^k."""

    p: int
    k: int
    m: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.p not in (2, 3):
            raise ValueError(f"only p in {{2, 3}} is supported, got {self.p}")
        if self.k < 1:
            raise ValueError(f"exponent k must be >= 1, got {self.k}")
        object.__setattr__(self, "m", self.p**self.k)

    def __str__(self):
        return f"Z/{self.p}^{self.k}"


@dataclass
class OpCounter:
    """Counts ring multiplications performed by :func:`evaluate`."""

    mults: int = 0


def modulus_of(ring: RingSpec | int) -> int:
    m = ring.m if isinstance(ring, RingSpec) else int(ring)
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    return m


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if n > MAX_DEGREE:
        raise DegreeOverflow(f"degree {n} exceeds 2**63 - 1")


def evaluate(n: int, x: int, ring: RingSpec | int, counter: OpCounter | None = None) -> int:
    """T_n(x) mod m in O(log n) multiplications."""
    _check_degree(n)
    m = modulus_of(ring)
    x %= m
    if n == 0:
        return 1 % m
    a, b = 1 % m, x  # (T_j, T_{j+1}) with j = 0
    for bit in bin(n)[2:]:
        if bit == "0":
            a, b = (2 * a * a - 1) % m, (2 * a * b - x) % m
        else:
            a, b = (2 * a * b - x) % m, (2 * b * b - 1) % m
    if counter is not None:
        counter.mults += 2 * n.bit_length()
    return a


def evaluate_recurrence(n: int, x: int, ring: RingSpec | int) -> int:
    """T_n(x) mod m straight from T_n = 2x T_{n-1} - T_{n-2}. O(n); reference only."""
    m = modulus_of(ring)
    x %= m
    prev, cur = 1 % m, x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, (2 * x * cur - prev) % m
    return cur


def evaluate_array(n: int, xs, ring: RingSpec | int) -> np.ndarray:
    """Vectorised :func:`evaluate` over an array of states; returns uint64."""
    _check_degree(n)
    m = modulus_of(ring)
    xs = np.asarray(xs)
    if m > VECTOR_MODULUS_LIMIT:
        flat = [evaluate(n, int(v), m) for v in xs.ravel()]
        return np.array(flat, dtype=object).reshape(xs.shape)
    mm = np.uint64(m)
    one, two = np.uint64(1), np.uint64(2)
    x = xs.astype(np.uint64) % mm
    a = np.full_like(x, 1 % m)
    if n == 0:
        return a
    b = x.copy()
    for bit in bin(n)[2:]:
        ab = (two * (a * b % mm) + mm - x) % mm
        if bit == "0":
            a, b = (two * (a * a % mm) + mm - one) % mm, ab
        else:
            a, b = ab, (two * (b * b % mm) + mm - one) % mm
    return a


def iterate(n: int, x: int, ring: RingSpec | int, i: int) -> int:
    """T_n applied i times. Composition, not T_{n**i}, so n**i never materialises."""
    if i < 0:
        raise ValueError("iteration count must be >= 0")
    m = modulus_of(ring)
    x %= m
    for _ in range(i):
        x = evaluate(n, x, m)
    return x


def semigroup_check(a: int, b: int, x: int, ring: RingSpec | int) -> bool:
    """T_a(T_b(x)) == T_{ab}(x) == T_b(T_a(x)) modulo m."""
    if a * b > MAX_DEGREE:
        raise DegreeOverflow(f"{a} * {b} overflows the degree range")
    m = modulus_of(ring)
    ab = evaluate(a * b, x, m)
    return evaluate(a, evaluate(b, x, m), m) == ab == evaluate(b, evaluate(a, x, m), m)


def is_permutation(n: int, p: int) -> bool:
    """Whether T_n permutes Z/p^k (for every k).

    For odd p this is gcd(n, p) == gcd(n, p^2 - 1) == 1, i.e. n = +-1 mod 6
    when p = 3.  For p = 2 the condition is just n odd: T_3 = 4x^3 - 3x
    permutes every Z/2^k although gcd(3, 2^2 - 1) = 3.
    """
    if p == 2:
        return n % 2 == 1
    return gcd(n, p) == 1 and gcd(n, p * p - 1) == 1


def coefficient(n: int, j: int) -> int:
    """Exact coefficient of x^(2j+1) in T_n, n odd."""
    if n % 2 == 0:
        raise EvenDegree(f"odd-power coefficients are defined here for odd n, got {n}")
    h = (n - 1) // 2
    if not 0 <= j <= h:
        raise ValueError(f"j must lie in [0, {h}], got {j}")
    num = comb(h + j, 2 * j) * n * 4**j
    q, r = divmod(num, 2 * j + 1)
    if r:
        raise NonIntegerResult(f"coefficient({n}, {j}) is not an integer")
    return -q if (h + j) % 2 else q


def deriv_at_pm1(n: int, order: int, sign: int) -> int:
    """Exact T_n^(order)(sign) for sign = +1 or -1.

    T_n^(m)(+-1) = (+-1)^(n+m) * prod_{j<m} (n^2 - j^2) / (2j + 1).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    if order > n:
        return 0
    num = den = 1
    for j in range(order):
        num *= n * n - j * j
        den *= 2 * j + 1
    q, r = divmod(num, den)
    if r:
        raise NonIntegerResult(f"T_{n}^({order})(+-1) is not an integer")
    if sign == -1 and (n + order) % 2:
        q = -q
    return q


def deriv_at_zero(n: int) -> int:
    """T_n'(0) = (-1)^((n-1)/2) n for odd n."""
    if n % 2 == 0:
        raise EvenDegree(f"T_n'(0) is only used for odd n, got {n}")
    return -n if (n - 1) // 2 % 2 else n
