"""Check records and reports shared by all verification families."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class Check:
    """One verified (or merely recorded) quantity.

    ``passed`` is ``None`` for report-only findings, i.e. comparisons made
    outside the hypotheses of the inequality they are compared against.
    """

    name: str
    value: float
    bound: float | None = None
    error_estimate: float = 0.0
    passed: bool | None = None
    anchor: str = ""
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        for k in ("value", "bound", "error_estimate"):
            if isinstance(d[k], float) and not math.isfinite(d[k]):
                d[k] = repr(d[k])
        return d


def upper_check(name: str, value: float, bound: float, *, error: float = 0.0,
                anchor: str = "", note: str = "", strict: bool = False) -> Check:
    lhs = value + error
    ok = lhs < bound if strict else lhs <= bound
    return Check(name, value, bound, error, bool(ok), anchor, note)


def finding(name: str, value: float, bound: float | None = None, *,
            anchor: str = "", note: str = "") -> Check:
    return Check(name, value, bound, 0.0, None, anchor, note)


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def config_hash(self) -> str:
        blob = json.dumps(self.config, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "title": self.title,
            "config_hash": self.config_hash(),
            "config": self.config,
            "pass": self.passed,
            "records": [c.to_dict() for c in self.checks],
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=_jsonable)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["name", "value", "bound", "error_estimate", "pass", "anchor", "note"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for c in self.checks:
            w.writerow(c.to_dict())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"== {self.title}"]
        for c in self.checks:
            tag = {True: "PASS", False: "FAIL", None: "INFO"}[c.passed]
            bound = "" if c.bound is None else f"  bound={c.bound:.10g}"
            err = f" +/- {c.error_estimate:.3g}" if c.error_estimate else ""
            lines.append(f"[{tag}] {c.name}: {c.value:.10g}{err}{bound}")
            if c.note:
                lines.append(f"       {c.note}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def render(self, fmt: str = "text") -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _jsonable(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)
