"""DOT, JSON and CSV renderings. All output is byte-stable for fixed input."""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .chebyshev import RingSpec, evaluate_array
from .graph import CycleSpectrum, GraphDecomposition, VerifyReport


def graph_to_dot(g: GraphDecomposition) -> str:
    """One edge ``x -> T_n(x)`` per state, nodes listed in increasing order."""
    m = g.modulus
    succ = evaluate_array(g.degree, np.arange(m, dtype=np.uint64), m).tolist()
    name = f"T{g.degree}_mod{m}"
    lines = [f'digraph "{name}" {{']
    lines.extend(f'  {x} [label="{x}"];' for x in range(m))
    lines.extend(f"  {x} -> {y};" for x, y in enumerate(succ))
    lines.append("}")
    return "\n".join(lines) + "\n"


def spectrum_to_dict(spec: CycleSpectrum, n: int, p: int, k: int, cls: str = "all") -> dict:
    return {
        "n": n,
        "p": p,
        "k": k,
        "class": cls,
        "spectrum": [{"length": length, "count": count} for length, count in spec.entries.items()],
        "covered": spec.covered,
    }


def spectrum_to_json(spec: CycleSpectrum, n: int, p: int, k: int, cls: str = "all") -> str:
    return json.dumps(spectrum_to_dict(spec, n, p, k, cls), indent=2) + "\n"


def spectrum_from_json(text: str) -> tuple[CycleSpectrum, dict]:
    """Inverse of :func:`spectrum_to_json`; also returns the header fields."""
    doc = json.loads(text)
    spec = CycleSpectrum({e["length"]: e["count"] for e in doc["spectrum"]})
    if spec.covered != doc["covered"]:
        raise ValueError(f"covered={doc['covered']} but entries sum to {spec.covered}")
    header = {key: doc[key] for key in ("n", "p", "k", "class")}
    return spec, header


def report_to_csv(report: VerifyReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["class", "length", "predicted", "observed", "match"])
    for cls, length, pred, obs in report.rows():
        writer.writerow([cls, length, pred, obs, "true" if pred == obs else "false"])
    return buf.getvalue()


def ring_label(ring: RingSpec | int) -> str:
    return str(ring) if isinstance(ring, RingSpec) else f"Z/{ring}"
