"""The eight acceptance criteria, each with its own time budget.

Every test records a PASS/FAIL line through ``acceptance_log``; the lines
are printed together at the end of the session by ``conftest.py``.
"""

import math
import time
from contextlib import contextmanager

import numpy as np

from chebydyn.chebyshev import OpCounter, RingSpec, coefficient, deriv_at_pm1, deriv_at_zero, evaluate, is_permutation
from chebydyn.graph import build_graph, compose_spectra, predicted_spectrum, selfloops_p3, verify
from chebydyn.padic import vp, vp_star
from chebydyn.period import theorem1_check_all
from chebydyn.sweep import SweepConfig, run_period_sweep, run_verify_sweep
from oracles import brute_spectrum


@contextmanager
def criterion(log, name, budget):
    """Time the block; log PASS only if it neither raised nor overran."""
    t0 = time.perf_counter()
    info = {"detail": ""}
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < budget
        detail = f"{dt:.2f}s (budget {budget:g}s)"
        if info["detail"]:
            detail += f"; {info['detail']}"
        log.append((name, ok and within, detail))
    assert within, f"{name} took {dt:.2f}s, budget {budget}s"


def test_c1_fig1_p2(acceptance_log):
    with criterion(acceptance_log, "1 T_19 over Z/2^k, k=3..7", 1.0) as info:
        reports = [verify(19, 2, k) for k in range(3, 8)]
        assert all(r.match for r in reports), [r.mismatches for r in reports]
        assert reports[2].observed["all"] == {1: 20, 2: 2, 4: 2}
        assert reports[4].observed["all"] == {1: 20, 2: 10, 4: 10, 8: 2, 16: 2}
        info["detail"] = f"k=5 {reports[2].observed['all']}, k=7 {reports[4].observed['all']}"


def test_c2_fig2_p3(acceptance_log):
    with criterion(acceptance_log, "2 T_19 over Z/3^5 by class", 1.0) as info:
        rep = verify(19, 3, 5)
        assert rep.match, rep.mismatches
        assert rep.observed["pm1"] == {1: 36, 3: 24, 9: 6}
        assert rep.observed["zero"] == {1: 1, 2: 4, 6: 3, 18: 3}
        info["detail"] = f"pm1 {rep.observed['pm1']}, zero {rep.observed['zero']}"


def test_c3_sweep(acceptance_log):
    with criterion(acceptance_log, "3 spectrum + period sweep, n in [3,199]", 600.0) as info:
        cfg = SweepConfig(degrees=range(3, 200), p2_k=range(1, 15), p3_k=range(1, 9), workers=4)
        reports = run_verify_sweep(cfg)
        bad = [(r.n, r.p, r.k) for r in reports if not r.match]
        assert not bad, bad[:10]
        periods = run_period_sweep(range(3, 200), range(1, 13), range(1, 8), workers=4)
        wrong = {key: v for key, v in periods.items() if v}
        assert not wrong, list(wrong.items())[:5]
        info["detail"] = f"{len(reports)} spectra, {len(periods)} period tables, 0 mismatches"


def test_c4_lemmas(acceptance_log):
    with criterion(acceptance_log, "4 derivative/coefficient divisibility, n <= 499", 30.0) as info:
        checks = 0
        for n in range(3, 500, 2):
            w = vp_star(n, 2)
            for sign in (1, -1):
                assert (deriv_at_pm1(n, 1, sign) - 1) % 2 ** (w + 1) == 0, (n, sign)
                for order in range(2, 13):
                    assert deriv_at_pm1(n, order, sign) % 2 ** (w + order // 2) == 0, (n, order, sign)
                    checks += 1
            assert (coefficient(n, 0) - 1) % 2**w == 0, n
            for j in range(1, (n + 1) // 2):
                assert coefficient(n, j) % 2**w == 0, (n, j)
                checks += 1
        for n in range(5, 500):
            if not is_permutation(n, 3):
                continue
            w = vp_star(n, 3)
            for order in range(3, 13):
                for sign in (1, -1):
                    q, r = divmod(deriv_at_pm1(n, order, sign) * 3**order, math.factorial(order))
                    assert r == 0 and vp(q, 3) >= w + 2, (n, order, sign)
                    checks += 1
            l0 = 1 if deriv_at_zero(n) % 3 == 1 else 2
            assert (deriv_at_zero(n**l0) - 1) % 3**w == 0, n
            checks += 1
        info["detail"] = f"{checks} exact checks"


def test_c5_theorem1(acceptance_log):
    degrees = [19] + [n for n in range(3, 200, 10) if n != 19][:19]
    with criterion(acceptance_log, "5 period 2^(k-s) on every state, k <= 12", 60.0) as info:
        assert len(degrees) == 20 and all(n % 2 for n in degrees)
        states = 0
        for n in degrees:
            for k in range(1, 13):
                ok = theorem1_check_all(n, k)
                assert ok.all(), (n, k, np.flatnonzero(~ok)[:5])
                states += ok.size
        info["detail"] = f"20 degrees, {states} states"


def test_c6_selfloops(acceptance_log):
    with criterion(acceptance_log, "6 +-1 self-loop sets, n <= 99, k <= 8", 60.0) as info:
        count = 0
        for n in range(5, 100):
            if not is_permutation(n, 3):
                continue
            for k in range(1, 9):
                g = build_graph(n, RingSpec(3, k))
                # length-1 cycles sort first in the canonical order
                fixed = g.order[: int(np.sum(g.lengths == 1))]
                brute = {int(x) for x in fixed if x % 3}
                assert selfloops_p3(n, k) == brute, (n, k)
                count += 1
        info["detail"] = f"{count} (n, k) pairs"


def test_c7_crt(acceptance_log):
    with criterion(acceptance_log, "7 CRT composition over Z/(2^a 3^b)", 60.0) as info:
        count = 0
        for n in (5, 7, 11, 13, 17, 19):
            for k1 in range(1, 7):
                for k2 in range(1, 5):
                    m = 2**k1 * 3**k2
                    composed = compose_spectra(predicted_spectrum(n, 2, k1), predicted_spectrum(n, 3, k2))
                    assert composed == brute_spectrum(n, m), (n, k1, k2)
                    assert composed == build_graph(n, m).spectrum(), (n, k1, k2)
                    count += 1
        info["detail"] = f"{count} composite rings"


def test_c8_performance(acceptance_log):
    with criterion(acceptance_log, "8 O(log n) evaluation and 2^22-state graph", 10.0) as info:
        n = 2**62 + 1
        counter = OpCounter()
        evaluate(n, 123456789, RingSpec(2, 30), counter=counter)
        bound = 2 * math.ceil(math.log2(n)) + 4
        assert counter.mults <= bound, (counter.mults, bound)
        t0 = time.perf_counter()
        g = build_graph(19, RingSpec(2, 22))
        dt = time.perf_counter() - t0
        assert g.spectrum().covered == 2**22
        assert dt < 10.0
        info["detail"] = f"{counter.mults} mults (bound {bound}); 2^22 graph in {dt:.2f}s"
