"""Verification reports and their JSON / CSV serializations."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .determinants import LogDet

__all__ = [
    "VerificationReport",
    "CSV_COLUMNS",
    "reports_to_json",
    "reports_from_json",
    "reports_to_csv",
    "symbol_hash",
    "jsonable",
]

CSV_COLUMNS = (
    "command", "symbol_hash", "realization", "k", "sign", "N",
    "lhs_logabs", "lhs_phase", "rhs_logabs", "rhs_phase", "rel_err", "passed",
)


def jsonable(obj):
    """Recursively convert to JSON-ready values; complex numbers become ``[re, im]``."""
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return None if math.isinf(x) or math.isnan(x) else x
    if isinstance(obj, LogDet):
        return _logdet_to_dict(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _logdet_to_dict(d):
    return {
        "log_abs": None if d.zero_flag or math.isnan(d.log_abs) else float(d.log_abs),
        "phase": float(d.phase),
        "zero_flag": bool(d.zero_flag),
    }


def _logdet_from_dict(d):
    if d["zero_flag"]:
        return LogDet.zero()
    if d["log_abs"] is None:
        return LogDet(math.nan, float(d["phase"]))
    return LogDet(float(d["log_abs"]), float(d["phase"]))


@dataclass
class VerificationReport:
    """Left and right sides of one identity check.

    ``passed`` is ``None`` when the check is outside the theorem's scope.
    """

    command: str
    lhs: LogDet
    rhs: LogDet
    rel_err: float
    passed: bool | None
    params: dict = field(default_factory=dict)
    notes: str = ""

    def to_dict(self):
        return {
            "command": self.command,
            "lhs": _logdet_to_dict(self.lhs),
            "rhs": _logdet_to_dict(self.rhs),
            "rel_err": jsonable(self.rel_err),
            "passed": self.passed,
            "params": jsonable(self.params),
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d):
        rel = d["rel_err"]
        return cls(
            command=d["command"],
            lhs=_logdet_from_dict(d["lhs"]),
            rhs=_logdet_from_dict(d["rhs"]),
            rel_err=math.inf if rel is None else float(rel),
            passed=d["passed"],
            params=d.get("params", {}),
            notes=d.get("notes", ""),
        )

    def csv_row(self):
        p = self.params
        sign = p.get("sign")
        return {
            "command": self.command,
            "symbol_hash": p.get("symbol_hash", ""),
            "realization": p.get("realization", ""),
            "k": "" if p.get("k") is None else p["k"],
            "sign": "" if sign is None else ("+" if sign > 0 else "-"),
            "N": "" if p.get("N") is None else p["N"],
            "lhs_logabs": _fmt(self.lhs.log_abs),
            "lhs_phase": _fmt(self.lhs.phase),
            "rhs_logabs": _fmt(self.rhs.log_abs),
            "rhs_phase": _fmt(self.rhs.phase),
            "rel_err": _fmt(self.rel_err),
            "passed": "" if self.passed is None else str(bool(self.passed)).lower(),
        }


def _fmt(x):
    return repr(float(x))


def reports_to_json(reports):
    payload = {"reports": [r.to_dict() for r in reports]}
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def reports_from_json(text):
    return [VerificationReport.from_dict(d) for d in json.loads(text)["reports"]]


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def symbol_hash(a):
    """Short stable digest of a symbol's coefficient table."""
    h = hashlib.sha256()
    h.update(str(a.lo).encode())
    h.update(np.ascontiguousarray(a.data).tobytes())
    return h.hexdigest()[:12]
