"""Functional graphs of x -> T_n(x) mod p^k and their predicted cycle spectra.

A permutation's functional graph is a disjoint union of cycles, so the
whole graph is summarised by its *cycle spectrum*: cycle length -> number
of cycles.  This module builds the graph by brute force, predicts the
spectrum in closed form per residue class (parity for p = 2, x mod 3 for
p = 3) and compares the two.
"""

from __future__ import annotations

import array
import os
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .chebyshev import RingSpec, evaluate, evaluate_array, modulus_of
from .errors import CycleRangeError, MixedClassCycle, NonIntegerQ, StateSpaceTooLarge
from .padic import inv_mod
from .period import l_s_of, period_closed, require_permutation, w_of

DEFAULT_MAX_STATES = 2**26

CLASSES = {2: ("odd", "even"), 3: ("zero", "pm1")}


def default_max_states() -> int:
    env = os.environ.get("CHEBY_MAX_STATES")
    return int(env) if env else DEFAULT_MAX_STATES


# --- spectra ---------------------------------------------------------------


@dataclass
class CycleSpectrum:
    """Multiset of cycle lengths, stored as ``{length: count}``."""

    entries: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for length, count in sorted(self.entries.items()):
            if length < 1 or count < 0:
                raise ValueError(f"bad spectrum entry {length}: {count}")
            if count:
                cleaned[int(length)] = int(count)
        self.entries = cleaned

    @classmethod
    def from_lengths(cls, lengths) -> CycleSpectrum:
        return cls(dict(Counter(int(v) for v in lengths)))

    @property
    def covered(self) -> int:
        return sum(length * count for length, count in self.entries.items())

    @property
    def num_cycles(self) -> int:
        return sum(self.entries.values())

    def __add__(self, other: CycleSpectrum) -> CycleSpectrum:
        merged = Counter(self.entries)
        merged.update(other.entries)
        return CycleSpectrum(dict(merged))

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.entries == CycleSpectrum(other).entries
        if isinstance(other, CycleSpectrum):
            return self.entries == other.entries
        return NotImplemented

    def __str__(self):
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.entries.items()) + "}"


def compose_spectra(a: CycleSpectrum, b: CycleSpectrum) -> CycleSpectrum:
    """Spectrum of the product map on Z/m1 x Z/m2 (coprime moduli, via CRT).

    A cycle of length L1 times a cycle of length L2 splits into
    gcd(L1, L2) cycles of length lcm(L1, L2).
    """
    out = Counter()
    for l1, c1 in a.entries.items():
        for l2, c2 in b.entries.items():
            g = gcd(l1, l2)
            out[l1 * l2 // g] += c1 * c2 * g
    return CycleSpectrum(dict(out))


# --- brute-force graph -----------------------------------------------------


@dataclass
class GraphDecomposition:
    """All cycles of x -> T_n(x), in canonical order.

    Each cycle starts at its minimum state and follows the orbit; cycles are
    sorted by (length, minimum).  Storage is flat: ``order`` concatenates
    the cycles and ``lengths`` delimits them.
    """

    ring: RingSpec | int
    degree: int
    order: np.ndarray
    lengths: np.ndarray

    @property
    def modulus(self) -> int:
        return modulus_of(self.ring)

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.lengths)))

    @property
    def cycles(self) -> list[list[int]]:
        offs = self.offsets.tolist()
        flat = self.order.tolist()
        return [flat[offs[i] : offs[i + 1]] for i in range(len(self.lengths))]

    def __len__(self):
        return len(self.lengths)

    def spectrum(self) -> CycleSpectrum:
        return CycleSpectrum.from_lengths(self.lengths.tolist())


def _split_modulus(m: int) -> dict[int, int]:
    exps = {}
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            exps[p] = e
    if m != 1:
        raise ValueError("only moduli of the form 2^a 3^b are supported")
    return exps


def build_graph(n: int, ring: RingSpec | int, max_states: int | None = None) -> GraphDecomposition:
    """Decompose Z/m into cycles of T_n with a visited bitmap.

    ``ring`` is normally a :class:`RingSpec`; a plain integer 2^a 3^b is
    accepted for the mixed-modulus extension.
    """
    m = modulus_of(ring)
    primes = [ring.p] if isinstance(ring, RingSpec) else list(_split_modulus(m))
    for p in primes:
        require_permutation(n, p)
    cap = default_max_states() if max_states is None else max_states
    if m > cap:
        raise StateSpaceTooLarge(f"{m} states exceeds the cap of {cap}")

    succ_arr = evaluate_array(n, np.arange(m, dtype=np.uint64), m).astype(np.int64)
    succ = memoryview(succ_arr)
    seen = bytearray((m + 7) >> 3)
    order = array.array("q")
    lengths = array.array("q")
    push = order.append
    # Scanning starts in increasing order means each new cycle is entered at
    # its minimum, which is already the canonical starting point.
    for start in range(m):
        if seen[start >> 3] >> (start & 7) & 1:
            continue
        x, length = start, 0
        while True:
            seen[x >> 3] |= 1 << (x & 7)
            push(x)
            length += 1
            x = succ[x]
            if x == start:
                break
            if length > m:
                raise RuntimeError("walk did not close; map is not a permutation")
        lengths.append(length)

    order_np = np.frombuffer(order, dtype=np.int64).copy()
    lens = np.frombuffer(lengths, dtype=np.int64).copy()
    # stable sort keeps minimum-ascending order within equal lengths
    perm = np.argsort(lens, kind="stable")
    if not np.array_equal(perm, np.arange(len(lens))):
        old_starts = np.concatenate(([0], np.cumsum(lens)[:-1]))
        new_lens = lens[perm]
        new_starts = np.concatenate(([0], np.cumsum(new_lens)[:-1]))
        idx = np.repeat(old_starts[perm] - new_starts, new_lens) + np.arange(m)
        order_np, lens = order_np[idx], new_lens
    return GraphDecomposition(ring=ring, degree=n, order=order_np, lengths=lens)


def _class_labels(states: np.ndarray, p: int) -> np.ndarray:
    if p == 2:
        return states % 2  # 1 = odd
    return (states % 3 != 0).astype(np.int64)  # 1 = pm1


def _class_value(cls: str) -> tuple[int, int]:
    return {"even": (2, 0), "odd": (2, 1), "zero": (3, 0), "pm1": (3, 1)}[cls]


def observed_spectrum(g: GraphDecomposition, class_filter: str | None = None) -> CycleSpectrum:
    """Spectrum of the built graph, optionally restricted to one residue class.

    Every cycle must lie inside a single class; a straddling cycle raises
    :class:`MixedClassCycle`.
    """
    if class_filter in (None, "all"):
        return g.spectrum()
    p, want = _class_value(class_filter)
    if not isinstance(g.ring, RingSpec) or g.ring.p != p:
        raise ValueError(f"class {class_filter!r} does not apply to {g.ring}")
    labels = _class_labels(g.order, p)
    starts = g.offsets[:-1]
    lo = np.minimum.reduceat(labels, starts)
    hi = np.maximum.reduceat(labels, starts)
    if np.any(lo != hi):
        bad = int(np.flatnonzero(lo != hi)[0])
        raise MixedClassCycle(f"cycle starting at {int(g.order[starts[bad]])} mixes residue classes")
    return CycleSpectrum.from_lengths(g.lengths[lo == want].tolist())


# --- predicted spectra -----------------------------------------------------


def predicted_p2_odd(n: int, k: int) -> CycleSpectrum:
    w = w_of(n, 2)
    if k < w + 3:
        return CycleSpectrum({1: 2 ** (k - 1)})
    out = {2**t: 2 ** (w + 1) for t in range(1, k - w - 2)}
    out[1] = 2 ** (w + 2)
    return CycleSpectrum(out)


def predicted_p2_even(n: int, k: int) -> CycleSpectrum:
    w = w_of(n, 2)
    if k <= w + 1:
        return CycleSpectrum({1: 2 ** (k - 1)})
    out = {2**t: 2 ** (w - 1) for t in range(1, k - w)}
    out[1] = 2**w
    return CycleSpectrum(out)


def predicted_p3_zero(n: int, k: int) -> CycleSpectrum:
    w = w_of(n, 3)
    l0 = l_s_of(n, 0)
    out = Counter({1: 1})
    if k >= w + 2:
        out[l0] += (3**w - 1) // l0
        for i in range(1, k - w):
            out[l0 * 3**i] += 2 * 3 ** (w - 1) // l0
    else:
        out[l0] += (3 ** (k - 1) - 1) // l0
    return CycleSpectrum(dict(out))


def predicted_p3_pm1(n: int, k: int) -> CycleSpectrum:
    w = w_of(n, 3)
    if k < w + 2:
        return CycleSpectrum({1: 2 * 3 ** (k - 1)})
    out = Counter({1: 4 * 3**w})
    for i in range(1, k - w - 1):
        out[3**i] += 8 * 3 ** (w - 1)
    out[3 ** (k - w - 1)] += 2 * 3 ** (w - 1)
    return CycleSpectrum(dict(out))


PREDICTORS = {
    "odd": predicted_p2_odd,
    "even": predicted_p2_even,
    "zero": predicted_p3_zero,
    "pm1": predicted_p3_pm1,
}


def predicted_class_spectrum(n: int, k: int, cls: str) -> CycleSpectrum:
    return PREDICTORS[cls](n, k)


def predicted_spectrum(n: int, p: int, k: int) -> CycleSpectrum:
    a, b = CLASSES[p]
    return PREDICTORS[a](n, k) + PREDICTORS[b](n, k)


# --- explicit state sets ---------------------------------------------------


def cycle_states_p2(n: int, k: int, parity: str, t: int) -> set[int]:
    """States of Z/2^k lying on cycles of length 2^t within one parity class.

    ``t = 0`` asks for the self-loops.  Valid ``t`` is 1..k-w-3 for odd
    states and 1..k-w-1 for even states.
    """
    w = w_of(n, 2)
    m = 2**k
    if parity == "odd":
        if t == 0:
            if k <= w + 2:
                return set(range(1, m, 2))
            step = 2 ** (k - w - 1)
            loops = set()
            for j in range(2 ** (w + 1)):
                loops.add((1 + step * j) % m)
                loops.add(((j + 1) * step - 1) % m)
            return loops
        if not 1 <= t <= k - w - 3:
            raise CycleRangeError(f"odd cycles of length 2^{t} do not occur for k={k}, w={w}")
        base = 2 ** (k - w - t - 1)
        return {
            (base + sign + 2 ** (k - w - t) * j1 + 2 ** (k - t) * j2) % m
            for sign in (1, -1)
            for j1 in range(2**w)
            for j2 in range(2**t)
        }
    if parity == "even":
        if t == 0:
            if k <= w + 1:
                return set(range(0, m, 2))
            return {2 ** (k - w) * j for j in range(2**w)}
        if not 1 <= t <= k - w - 1:
            raise CycleRangeError(f"even cycles of length 2^{t} do not occur for k={k}, w={w}")
        return {
            (2 ** (k - w - t) * (2 * j1 + 1) + 2 ** (k - t) * j2) % m
            for j1 in range(2 ** (w - 1))
            for j2 in range(2**t)
        }
    raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


def selfloop_residues_p3(n: int, k: int) -> list[int]:
    """Residues mod 3^(k-w) whose lifts are exactly the self-loops x = +-1 mod 3.

    Digits are fixed one at a time.  For the branch x = sign + sum j_i 3^i,
    j_1 ranges over {0, sign mod 3} and each later digit solves a linear
    congruence mod 3 whose constant term is
        q_i = (T_n(x_i) - x_i) / 3^(w+i),   x_i = sign + sum_{t<i} j_t 3^t,
    and whose slope is c (1 + sign j_1), with c = (n^2 - 1) / 3^w mod 3.
    Requires k >= w + 2.
    """
    w = w_of(n, 3)
    c = (n * n - 1) // 3**w % 3
    top = 3 ** (k - w)
    residues = []
    for sign in (1, -1):
        for j1 in (0, sign % 3):
            x = sign + 3 * j1
            slope_inv = inv_mod(c * (1 + sign * j1), 3)
            for i in range(2, k - w):
                mod = 3 ** (w + i + 1)
                diff = (evaluate(n, x, mod) - x) % mod
                q, r = divmod(diff, 3 ** (w + i))
                if r:
                    raise NonIntegerQ(f"q_{i} is not an integer for n={n}, x={x}")
                x += 3**i * (-q * slope_inv % 3)
            residues.append(x % top)
    return sorted(residues)


def selfloops_p3(n: int, k: int) -> set[int]:
    """Fixed points of T_n on Z/3^k among states congruent to +-1 mod 3."""
    w = w_of(n, 3)
    m = 3**k
    if k <= w + 1:
        return {x for x in range(m) if x % 3}
    step = 3 ** (k - w)
    return {x for r in selfloop_residues_p3(n, k) for x in range(r, m, step)}


# --- prediction vs observation --------------------------------------------


@dataclass
class VerifyReport:
    n: int
    p: int
    k: int
    predicted: dict[str, CycleSpectrum]
    observed: dict[str, CycleSpectrum]
    # (class, length, predicted, observed).  A class "period@x" marks a cycle
    # through minimum state x whose observed length differs from the
    # closed-form period of x; the last two fields are then those periods.
    mismatches: list[tuple[str, int, int, int]]

    @property
    def match(self) -> bool:
        return not self.mismatches

    def rows(self):
        """(class, length, predicted, observed) for every length seen in either spectrum."""
        for cls in self.predicted:
            pred = self.predicted[cls].entries
            obs = self.observed[cls].entries
            for length in sorted(set(pred) | set(obs)):
                yield cls, length, pred.get(length, 0), obs.get(length, 0)


def verify(n: int, p: int, k: int, max_states: int | None = None) -> VerifyReport:
    g = build_graph(n, RingSpec(p, k), max_states=max_states)
    predicted, observed = {}, {}
    for cls in CLASSES[p]:
        predicted[cls] = predicted_class_spectrum(n, k, cls)
        observed[cls] = observed_spectrum(g, cls)
    predicted["all"] = predicted[CLASSES[p][0]] + predicted[CLASSES[p][1]]
    observed["all"] = observed_spectrum(g)

    mismatches = []
    for cls in predicted:
        pred, obs = predicted[cls].entries, observed[cls].entries
        for length in sorted(set(pred) | set(obs)):
            if pred.get(length, 0) != obs.get(length, 0):
                mismatches.append((cls, length, pred.get(length, 0), obs.get(length, 0)))

    starts = g.offsets[:-1].tolist()
    for start, length in zip(starts, g.lengths.tolist()):
        x = int(g.order[start])
        closed = period_closed(n, p, k, x)
        if closed != length:
            mismatches.append((f"period@{x}", length, closed, length))
    return VerifyReport(n=n, p=p, k=k, predicted=predicted, observed=observed, mismatches=mismatches)


def observed_spectrum_mod(n: int, m: int, max_states: int | None = None) -> CycleSpectrum:
    """Brute-force spectrum of T_n over Z/m for any m = 2^a 3^b."""
    return build_graph(n, m, max_states=max_states).spectrum()


def class_of(x: int, p: int) -> str:
    if p == 2:
        return "odd" if x % 2 else "even"
    return "pm1" if x % 3 else "zero"

