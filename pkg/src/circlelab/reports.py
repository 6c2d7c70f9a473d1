"""Check results and their deterministic JSON/CSV serialization."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from . import __version__
from .cyclotomic import CycSum
from .fields import NEG_INF, FpPoly


def to_jsonable(x: Any) -> Any:
    """Canonical JSON form of the exact values the checks produce."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float) and x == NEG_INF:
        return "-inf"
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, CycSum):
        return x.to_int() if x.is_integer() else {"zeta_coords": list(x.coords), "p": x.p}
    if isinstance(x, FpPoly):
        return list(x.c)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class CheckResult:
    check: str
    params: dict
    lhs: Any
    rhs: Any
    passed: bool
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.passed)

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "params": to_jsonable(self.params),
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "pass": bool(self.passed),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def config_hash(config: dict) -> str:
    blob = json.dumps(to_jsonable(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def report_document(results: Iterable[CheckResult], config: dict) -> dict:
    results = list(results)
    return {
        "tool": "circlelab",
        "tool_version": __version__,
        "config": to_jsonable(config),
        "config_hash": config_hash(config),
        "all_pass": all(r.passed for r in results),
        "results": [r.to_dict() for r in results],
    }


def report_json(results: Iterable[CheckResult], config: dict) -> str:
    return json.dumps(report_document(results, config), sort_keys=True, indent=2) + "\n"


def report_csv(results: Iterable[CheckResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "params", "lhs", "rhs", "pass"])
    for r in results:
        d = r.to_dict()
        w.writerow([d["check"], json.dumps(d["params"], sort_keys=True),
                    json.dumps(d["lhs"], sort_keys=True), json.dumps(d["rhs"], sort_keys=True),
                    str(d["pass"]).lower()])
    return buf.getvalue()


def emit_report(results: Iterable[CheckResult], config: dict, out_dir: str | Path, stem: str = "report") -> tuple[Path, Path]:
    results = list(results)
    if not results:
        raise ValueError("refusing to write an empty report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jpath, cpath = out / f"{stem}.json", out / f"{stem}.csv"
    jpath.write_text(report_json(results, config))
    cpath.write_text(report_csv(results))
    return jpath, cpath
