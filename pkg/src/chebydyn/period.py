"""Least periods of Chebyshev orbits over Z/2^k and Z/3^k.

Two independent routes to the same number:

* closed forms driven by w = vp_star(n, p) and a per-state exponent
  (``s`` for p = 2, ``(l_s, v_s)`` for p = 3);
* a brute-force oracle that iterates T_n until the orbit closes.

The per-state exponents are measured one digit beyond k, so "agrees to
precision k" and "agrees beyond precision k" stay distinguishable; the
value ``k + 1`` is the sentinel for the latter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import RingSpec, deriv_at_zero, evaluate, evaluate_array, is_permutation, iterate
from .errors import IterationBudgetExceeded, NotPermutation, StateOutOfRange
from .padic import INF, Valuation, vp, vp_star


@dataclass
class PeriodRecord:
    n: int
    p: int
    k: int
    x: int
    w: Valuation
    period_closed: int
    s: Valuation | None = None  # p = 2
    l_s: int | None = None  # p = 3
    v_s: Valuation | None = None  # p = 3
    period_oracle: int | None = None

    @property
    def agrees(self) -> bool | None:
        if self.period_oracle is None:
            return None
        return self.period_oracle == self.period_closed


def require_permutation(n: int, p: int) -> None:
    if n < 1 or not is_permutation(n, p):
        raise NotPermutation(f"T_{n} does not permute Z/{p}^k")


def _check_state(x: int, p: int, k: int) -> None:
    if not 0 <= x < p**k:
        raise StateOutOfRange(f"state {x} outside Z/{p}^{k}")


def w_of(n: int, p: int) -> Valuation:
    """w = max(vp(n - 1), vp(n + 1)). INF only for n = 1."""
    require_permutation(n, p)
    return vp_star(n, p)


# --- p = 2 -----------------------------------------------------------------


def s_exponent(n: int, k: int, x: int) -> int:
    """vp_2(T_n(x) - x), measured mod 2^(k+1) and capped at k + 1."""
    require_permutation(n, 2)
    m = 2 ** (k + 1)
    return min(vp((evaluate(n, x, m) - x) % m, 2), k + 1)


def period_p2_closed(n: int, k: int, x: int) -> int:
    require_permutation(n, 2)
    _check_state(x, 2, k)
    kp = k - w_of(n, 2)
    if x % 2 == 0:
        if kp > 1:
            return 2 ** max(kp - vp(x, 2), 0)
    elif kp > 3:
        return 2 ** max(kp - vp_star(x, 2) - 1, 0)
    return 1


def theorem1_check(n: int, k: int, x: int) -> bool:
    """Does the orbit of x close after exactly 2^(k-s) steps, and not after half?"""
    s = s_exponent(n, k, x)
    if s > k:
        return evaluate(n, x, 2**k) == x
    e = k - s
    ring = RingSpec(2, k)
    if iterate(n, x, ring, 2**e) != x:
        return False
    return e == 0 or iterate(n, x, ring, 2 ** (e - 1)) != x


def theorem1_check_all(n: int, k: int) -> np.ndarray:
    """:func:`theorem1_check` for every state of Z/2^k at once.

    T_n^(2^e) is built by repeatedly composing the state map with itself,
    so nothing here consults the closed form.
    """
    require_permutation(n, 2)
    m = 2**k
    xs = np.arange(m, dtype=np.uint64)
    m2 = np.uint64(2 * m)
    diff = (evaluate_array(n, xs, 2 * m) + m2 - xs) % m2
    s = np.full(m, k + 1, dtype=np.int64)
    nz = diff != 0
    d = diff[nz].astype(np.int64)
    s[nz] = np.log2(d & -d).astype(np.int64)  # exact: isolated lowest bit
    s = np.minimum(s, k + 1)

    power = evaluate_array(n, xs, m)  # T_n^(2^0)
    powers = [power]
    for _ in range(k):
        power = power[power]
        powers.append(power)

    ok = np.zeros(m, dtype=bool)
    fixed = s > k
    ok[fixed] = powers[0][fixed] == xs[fixed]
    for e in range(k + 1):
        sel = np.flatnonzero(s == k - e)
        if sel.size == 0:
            continue
        closes = powers[e][sel] == xs[sel]
        if e > 0:
            closes &= powers[e - 1][sel] != xs[sel]
        ok[sel] = closes
    return ok


# --- p = 3 -----------------------------------------------------------------


def l_s_of(n: int, x: int) -> int:
    """Multiplicative order of T_n'(x) in (Z/3)^*; 1 unless x = 0 mod 3."""
    require_permutation(n, 3)
    if x % 3:
        return 1
    return 1 if deriv_at_zero(n) % 3 == 1 else 2


def v_s_of(n: int, k: int, x: int) -> int:
    """vp_3(T_n^(l_s)(x) - x), measured mod 3^(k+1) and capped at k + 1."""
    m = 3 ** (k + 1)
    y = iterate(n, x, m, l_s_of(n, x))
    return min(vp((y - x) % m, 3), k + 1)


def period_p3_closed(n: int, k: int, x: int) -> int:
    require_permutation(n, 3)
    _check_state(x, 3, k)
    if evaluate(n, x, 3**k) == x:
        # covers 0, +-1 and every self-loop, where l_s alone could report 2
        return 1
    return l_s_of(n, x) * 3 ** max(k - v_s_of(n, k, x), 0)


# --- dispatch and oracle ---------------------------------------------------


def period_closed(n: int, p: int, k: int, x: int) -> int:
    if p == 2:
        return period_p2_closed(n, k, x)
    if p == 3:
        return period_p3_closed(n, k, x)
    raise ValueError(f"unsupported prime {p}")


def period_oracle(n: int, p: int, k: int, x: int, cap: int | None = None) -> int:
    """Count applications of T_n until x comes back."""
    require_permutation(n, p)
    m = p**k
    _check_state(x, p, k)
    cap = 2 * m if cap is None else cap
    y = evaluate(n, x, m)
    steps = 1
    while y != x:
        if steps >= cap:
            raise IterationBudgetExceeded(f"no return to {x} within {cap} steps")
        y = evaluate(n, y, m)
        steps += 1
    return steps


def oracle_periods(n: int, p: int, k: int, cap: int | None = None) -> np.ndarray:
    """Brute-force period of every state of Z/p^k, stepping all orbits in lockstep."""
    require_permutation(n, p)
    m = p**k
    cap = 2 * m if cap is None else cap
    succ = evaluate_array(n, np.arange(m, dtype=np.uint64), m).astype(np.int64)
    start = np.arange(m, dtype=np.int64)
    periods = np.zeros(m, dtype=np.int64)
    active = start
    cur = succ
    steps = 1
    while active.size:
        back = cur == active
        periods[active[back]] = steps
        active, cur = active[~back], succ[cur[~back]]
        steps += 1
        if active.size and steps > cap:
            raise IterationBudgetExceeded(f"orbits still open after {cap} steps")
    return periods


def closed_periods(n: int, p: int, k: int) -> np.ndarray:
    return np.array([period_closed(n, p, k, x) for x in range(p**k)], dtype=np.int64)


def period_record(n: int, p: int, k: int, x: int, oracle: bool = False) -> PeriodRecord:
    rec = PeriodRecord(n=n, p=p, k=k, x=x, w=w_of(n, p), period_closed=period_closed(n, p, k, x))
    if p == 2:
        rec.s = s_exponent(n, k, x)
    else:
        rec.l_s = l_s_of(n, x)
        rec.v_s = v_s_of(n, k, x)
    if oracle:
        rec.period_oracle = period_oracle(n, p, k, x)
    return rec


__all__ = [
    "INF",
    "PeriodRecord",
    "closed_periods",
    "l_s_of",
    "oracle_periods",
    "period_closed",
    "period_oracle",
    "period_p2_closed",
    "period_p3_closed",
    "period_record",
    "require_permutation",
    "s_exponent",
    "theorem1_check",
    "theorem1_check_all",
    "v_s_of",
    "w_of",
]
