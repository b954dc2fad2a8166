"""Verification records and the CSV / JSON emitters.

CSV is comma separated with a header row, LF line endings and floats
printed with 17 significant digits so that values round-trip exactly.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping

import numpy as np

__all__ = ["VerificationRecord", "CheckResult", "format_value", "write_csv", "write_json", "records_to_columns"]


def format_value(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.17g}"
    if v is None:
        return ""
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        # JSON has no infinities; keep them readable rather than invalid
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return None
        return v
    if isinstance(v, Mapping):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def write_csv(fh, columns: Mapping[str, Iterable[Any]]) -> None:
    names = list(columns)
    cols = [list(np.asarray(c).tolist()) if isinstance(c, np.ndarray) else list(c) for c in columns.values()]
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(names)
    for row in zip(*cols):
        writer.writerow([format_value(v) for v in row])


def write_json(fh, rows: list[Mapping[str, Any]], meta: Mapping[str, Any]) -> None:
    json.dump({"meta": _jsonable(meta), "rows": _jsonable(rows)}, fh, indent=1)
    fh.write("\n")


@dataclass(frozen=True)
class VerificationRecord:
    """One grid point of a bound-versus-oracle comparison.

    ``margin`` is oriented so that a nonnegative value means the inequality
    holds; ``tolerance`` is the slack allowed for rounding or discretisation.
    """

    name: str
    inputs: dict
    bound: float
    oracle: float
    margin: float
    passed: bool
    tolerance: float = 0.0

    def as_row(self) -> dict:
        return {
            "check": self.name,
            "inputs": ";".join(f"{k}={format_value(v)}" for k, v in self.inputs.items()),
            "bound": self.bound,
            "oracle": self.oracle,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }

    def to_dict(self) -> dict:
        return _jsonable(
            {
                "check": self.name,
                "inputs": self.inputs,
                "bound": self.bound,
                "oracle": self.oracle,
                "margin": self.margin,
                "tolerance": self.tolerance,
                "passed": self.passed,
            }
        )


def records_to_columns(records: Iterable[VerificationRecord]) -> dict[str, list]:
    cols: dict[str, list] = {k: [] for k in ("check", "inputs", "bound", "oracle", "margin", "tolerance", "passed")}
    for rec in records:
        for k, v in rec.as_row().items():
            cols[k].append(v)
    return cols


def _item(v):
    return v.item() if isinstance(v, np.generic) else v


@dataclass
class CheckResult:
    """Column-oriented batch of comparisons sharing one check name."""

    name: str
    inputs: dict[str, np.ndarray]
    bound: np.ndarray
    oracle: np.ndarray
    margin: np.ndarray
    tolerance: np.ndarray | float = 0.0
    note: str = ""
    skipped: int = 0
    passed: np.ndarray = field(init=False)

    def __post_init__(self):
        self.bound = np.atleast_1d(np.asarray(self.bound, dtype=float))
        self.oracle = np.atleast_1d(np.asarray(self.oracle, dtype=float))
        self.margin = np.atleast_1d(np.asarray(self.margin, dtype=float))
        tol = np.broadcast_to(np.asarray(self.tolerance, dtype=float), self.margin.shape)
        self.tolerance = tol
        self.inputs = {k: np.broadcast_to(np.asarray(v), self.margin.shape) for k, v in self.inputs.items()}
        self.passed = self.margin >= -tol

    @property
    def count(self) -> int:
        return int(self.margin.size)

    @property
    def failures(self) -> int:
        return int((~self.passed).sum())

    @property
    def ok(self) -> bool:
        return self.failures == 0

    @property
    def worst_margin(self) -> float:
        return float(self.margin.min()) if self.margin.size else math.nan

    def records(self, only_failures: bool = False) -> Iterator[VerificationRecord]:
        idx = np.flatnonzero(~self.passed) if only_failures else range(self.count)
        for i in idx:
            yield VerificationRecord(
                self.name,
                {k: _item(v[i]) for k, v in self.inputs.items()},
                float(self.bound[i]),
                float(self.oracle[i]),
                float(self.margin[i]),
                bool(self.passed[i]),
                float(self.tolerance[i]),
            )

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.count - self.failures}/{self.count} passed, worst margin {self.worst_margin:.6g}"
        if self.skipped:
            line += f", {self.skipped} skipped"
        if self.note:
            line += f" ({self.note})"
        return line
