"""Parameter sweeps over (n, p, k), optionally spread over worker processes.

Config files are plain ``key=value`` text::

    # acceptance grid
    degrees=3..199
    p2_k=1..14
    p3_k=1..8
    workers=4

Unknown keys are rejected.  Results always come back in tuple order,
whatever the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .chebyshev import is_permutation
from .graph import VerifyReport, default_max_states, verify
from .period import closed_periods, oracle_periods


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    degrees: range = range(3, 200)
    p2_k: range = range(1, 15)
    p3_k: range = range(1, 9)
    workers: int = 1
    out: Path | None = None

    def __post_init__(self):
        for name in ("degrees", "p2_k", "p3_k"):
            r = getattr(self, name)
            if len(r) == 0:
                raise ConfigError(f"{name} is empty")
            if r.start < 1:
                raise ConfigError(f"{name} must start at 1 or more")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        cap = default_max_states()
        for p, ks in ((2, self.p2_k), (3, self.p3_k)):
            if p ** ks[-1] > cap:
                raise ConfigError(f"{p}^{ks[-1]} states exceeds the cap of {cap}")

    def tuples(self) -> list[tuple[int, int, int]]:
        out = []
        for p, ks in ((2, self.p2_k), (3, self.p3_k)):
            for n in self.degrees:
                if not is_permutation(n, p):
                    continue
                out.extend((n, p, k) for k in ks)
        return out


def _parse_range(text: str) -> range:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def parse_config(text: str) -> SweepConfig:
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key in ("degrees", "p2_k", "p3_k"):
                fields[key] = _parse_range(value)
            elif key == "workers":
                fields[key] = int(value)
            elif key == "out":
                fields[key] = Path(value)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
    return SweepConfig(**fields)


def load_config(path: str | Path) -> SweepConfig:
    return parse_config(Path(path).read_text())


def _verify_task(args):
    return verify(*args)


def run_verify(tasks: list[tuple[int, int, int]], workers: int = 1) -> list[VerifyReport]:
    if workers == 1:
        return [_verify_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_task, tasks, chunksize=8))


def run_verify_sweep(cfg: SweepConfig) -> list[VerifyReport]:
    return run_verify(cfg.tuples(), cfg.workers)


def period_mismatches(n: int, p: int, k: int) -> list[tuple[int, int, int]]:
    """States whose closed-form period differs from the brute-force one.

    Returns (state, closed, oracle) triples; empty means full agreement.
    """
    closed = closed_periods(n, p, k)
    oracle = oracle_periods(n, p, k)
    bad = np.flatnonzero(closed != oracle)
    return [(int(x), int(closed[x]), int(oracle[x])) for x in bad]


def _period_task(args):
    return args, period_mismatches(*args)


def run_period_sweep(degrees: range, p2_k: range, p3_k: range, workers: int = 1):
    """Map (n, p, k) -> mismatch list over the permutation degrees in ``degrees``."""
    cfg = SweepConfig(degrees=degrees, p2_k=p2_k, p3_k=p3_k, workers=workers)
    tasks = cfg.tuples()
    if workers == 1:
        results = map(_period_task, tasks)
        return dict(results)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return dict(pool.map(_period_task, tasks, chunksize=8))
