"""JSON and CSV emission for the data types.

Reals are printed with 17 significant digits everywhere, which round-trips
IEEE doubles bit-exactly through decimal text.  The emitters build their own
JSON text so the float formatting (and hence byte-level output) is fully
deterministic.
"""

from __future__ import annotations

import io
import json
import math
from fractions import Fraction

import numpy as np

from .cube import BooleanFunction, Spectrum, SymmetricSpectrum
from .inequalities import InequalityReport
from .radius import RadiusResult


def fmt17(x: float) -> str:
    """Shortest-width 17-significant-digit decimal form of a finite double."""
    if not math.isfinite(x):
        raise ValueError(f"cannot format non-finite value {x}")
    return "%.17g" % float(x)


def _emit(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return fmt17(float(value))
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_emit(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_emit(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def dumps(obj) -> str:
    return _emit(obj) + "\n"


def truth_table_obj(f: BooleanFunction) -> dict:
    return {"n": f.n, "values": [float(v) for v in f.values]}


def dumps_truth_table(f: BooleanFunction) -> str:
    return dumps(truth_table_obj(f))


def loads_truth_table(text: str) -> BooleanFunction:
    obj = json.loads(text)
    if not isinstance(obj, dict) or set(obj) != {"n", "values"}:
        raise ValueError('truth-table JSON must be {"n": ..., "values": [...]}')
    return BooleanFunction(obj["n"], np.asarray(obj["values"], dtype=float))


def dumps_spectrum(s: Spectrum) -> str:
    return dumps({"n": s.n, "coeffs": [float(c) for c in s.coeffs]})


def loads_spectrum(text: str) -> Spectrum:
    obj = json.loads(text)
    if not isinstance(obj, dict) or set(obj) != {"n", "coeffs"}:
        raise ValueError('spectrum JSON must be {"n": ..., "coeffs": [...]}')
    return Spectrum(obj["n"], np.asarray(obj["coeffs"], dtype=float))


def dumps_symmetric_spectrum(s: SymmetricSpectrum) -> str:
    obj = {
        "n": s.n,
        "level_coeffs": [f"{c.numerator}/{c.denominator}" for c in s.level_coeffs],
        "log_abs": ["-inf" if v == -math.inf else fmt17(v) for v in s.log_abs],
    }
    return dumps(obj)


def loads_symmetric_spectrum(text: str) -> SymmetricSpectrum:
    obj = json.loads(text)
    coeffs = [Fraction(c) for c in obj["level_coeffs"]]
    return SymmetricSpectrum.from_level_coeffs(obj["n"], coeffs)


def radius_result_obj(r: RadiusResult) -> dict:
    return {
        "radius": "inf" if math.isinf(r.radius) else float(r.radius),
        "residual": float(r.residual),
        "iterations": r.iterations,
        "method": r.method,
    }


def dumps_radius_result(r: RadiusResult) -> str:
    return dumps(radius_result_obj(r))


def dumps_report(r: InequalityReport) -> str:
    return dumps(
        {
            "suite": r.suite,
            "samples": r.samples,
            "failures": r.failures,
            "worst_margin": float(r.worst_margin),
            "witness": truth_table_obj(r.witness) if r.witness is not None else None,
        }
    )


THRESHOLD_SCAN_HEADER = ("n", "alpha", "radius", "ratio", "mckay_c", "sandwich_ok", "y_value")
MAJORITY_SCAN_HEADER = ("n", "radius", "radius_sqrt_n", "ratio_to_gamma", "gamma")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def threshold_scan_csv(reports) -> str:
    rows = [
        (
            str(r.n),
            str(r.alpha),
            fmt17(r.radius),
            fmt17(r.ratio),
            fmt17(r.mckay_c),
            "true" if r.sandwich_ok else "false",
            fmt17(r.y_value),
        )
        for r in reports
    ]
    return _csv(THRESHOLD_SCAN_HEADER, rows)


def majority_scan_csv(rows, gamma: float) -> str:
    out = [(str(n), fmt17(r), fmt17(rs), fmt17(rg), fmt17(gamma)) for n, r, rs, rg in rows]
    return _csv(MAJORITY_SCAN_HEADER, out)
