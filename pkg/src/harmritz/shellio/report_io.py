"""JSON and CSV serialization of reports, sweeps and campaign summaries.

Floats are written with 17 significant digits so they parse back to the
same double.  Non-finite floats become the strings ``"inf"``, ``"-inf"``
and ``"nan"``; complex numbers become ``{"re": ..., "im": ...}``.
"""
import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

from ..bounds import BOUND_NAMES, BoundReport
from ..errors import ConfigError, IoError
from ..studybench.campaign import CampaignSummary
from ..studybench.sweep import SweepRecord

SWEEP_HEADER = (
    ["tau_re", "tau_im", "skipped", "reason", "lambda_re", "lambda_im",
     "uniform_separation_ratio", "sin_x_xtilde", "abs_lambda_err",
     "sigma_min_B", "sigma_max_B", "violations"]
    + [f"bound_{name}" for name in BOUND_NAMES]
)
REPORT_HEADER = ["name", "kind", "applicable", "value", "actual_name", "actual", "reason"]
CAMPAIGN_HEADER = ["name", "seed", "count", "checked", "n_violations", "n_errors"]


def fmt_float(v):
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0.0 and math.copysign(1.0, v) < 0:
        return "-0.0"  # "-0" would parse back as the integer 0
    return f"{v:.17g}"


def _dump(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        s = fmt_float(obj)
        out.append(s if math.isfinite(obj) else json.dumps(s))
    elif isinstance(obj, (complex, np.complexfloating)):
        _dump({"re": obj.real, "im": obj.imag}, out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for k, (key, val) in enumerate(obj.items()):
            if k:
                out.append(", ")
            out.append(json.dumps(str(key)) + ": ")
            _dump(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for k, val in enumerate(obj):
            if k:
                out.append(", ")
            _dump(val, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj):
    out = []
    _dump(obj, out)
    return "".join(out) + "\n"


def report_dict(report: BoundReport):
    return {
        "instance": report.instance,
        "thresholds": report.thresholds,
        "actuals": report.actuals,
        "bounds": [{"name": b.name, "value": b.value, "applicable": b.applicable,
                    "reason": b.reason, "kind": b.kind, "actual_name": b.actual_name,
                    "actual": b.actual, "components": b.components}
                   for b in report.bounds],
        "conditions": report.conditions,
        "uniform_separation_ratio": report.uniform_separation_ratio,
    }


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _sweep_row(r: SweepRecord):
    lam = r.lam
    return ([r.tau.real, r.tau.imag, r.skipped, r.reason,
             None if lam is None else lam.real, None if lam is None else lam.imag,
             r.uniform_separation_ratio, r.sin_x_xtilde, r.abs_lambda_err,
             r.sigma_min_B, r.sigma_max_B, r.violations]
            + [r.bounds.get(name) for name in BOUND_NAMES])


def render(obj, fmt="json"):
    """Text for a report, a list of sweep records, or campaign summaries."""
    if fmt not in ("json", "csv"):
        raise ConfigError(f"unknown format {fmt!r}")
    if isinstance(obj, CampaignSummary):
        obj = [obj]
    if isinstance(obj, BoundReport):
        if fmt == "json":
            return to_json(report_dict(obj))
        return _csv(REPORT_HEADER, ([b.name, b.kind, b.applicable, b.value, b.actual_name,
                                     b.actual, b.reason] for b in obj.bounds))
    items = list(obj)
    if all(isinstance(r, SweepRecord) for r in items):
        if fmt == "json":
            return to_json([asdict(r) for r in items])
        return _csv(SWEEP_HEADER, (_sweep_row(r) for r in items))
    if all(isinstance(r, CampaignSummary) for r in items):
        if fmt == "json":
            return to_json([s.as_dict() for s in items])
        return _csv(CAMPAIGN_HEADER, ([s.name, s.seed, s.count, s.checked, s.n_violations,
                                       len(s.errors)] for s in items))
    if fmt == "json" and all(is_dataclass(r) for r in items):
        return to_json([asdict(r) for r in items])
    raise TypeError("render expects a BoundReport, sweep records or campaign summaries")


def emit_report(obj, fmt="json", path=None):
    """Render ``obj``; write it to ``path`` when given.  Returns the text."""
    text = render(obj, fmt)
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from None
    return text


def _revive(obj):
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return complex(_revive(obj["re"]), _revive(obj["im"]))
        return {k: _revive(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_revive(v) for v in obj]
    if obj in ("inf", "-inf", "nan"):
        return float(obj)
    return obj


def load_json(text):
    """Parse emitted JSON back, restoring complex numbers and non-finite floats."""
    return _revive(json.loads(text))
