"""Slow, obviously-correct reference computations used as test oracles.

Nothing here imports the package under test.
"""

from collections import Counter
from math import factorial


def cheb_coeffs(n):
    """Integer coefficient list of T_n (index = power), by the three-term recurrence."""
    prev, cur = [1], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def poly_deriv_at(coeffs, order, x):
    total = 0
    for i, c in enumerate(coeffs):
        if i >= order:
            total += c * factorial(i) // factorial(i - order) * x ** (i - order)
    return total


def rec_eval(n, x, m):
    """T_n(x) mod m by iterating T_j = 2x T_{j-1} - T_{j-2}."""
    x %= m
    if n == 0:
        return 1 % m
    a, b = 1 % m, x
    for _ in range(n - 1):
        a, b = b, (2 * x * b - a) % m
    return b


def valuation(x, p):
    if x == 0:
        return float("inf")
    x, e = abs(x), 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def brute_period(n, x, m):
    y, steps = rec_eval(n, x, m), 1
    while y != x:
        y, steps = rec_eval(n, y, m), steps + 1
    return steps


def brute_cycles(n, m):
    """Cycle list of x -> T_n(x) mod m using a set, no bit tricks."""
    seen, cycles = set(), []
    for s in range(m):
        if s in seen:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = rec_eval(n, x, m)
        cycles.append(cyc)
    return cycles


def brute_spectrum(n, m, keep=lambda x: True):
    return dict(sorted(Counter(len(c) for c in brute_cycles(n, m) if keep(c[0])).items()))

