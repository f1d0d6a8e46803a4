"""Result records shared by every check and subcommand.

A ``Report`` is what the verification suites, the audit and the CLI hand back.
Serialization is deterministic: keys are sorted, floats are rounded to 15
significant digits and exact rationals are written as ``"p/q"`` text.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

FLOAT_DIGITS = 15


def jsonable(value: Any) -> Any:
    """Convert a value into plain JSON data with the repository's fixed formatting."""
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return str(value)
        return float(format(value, ".{}g".format(FLOAT_DIGITS)))
    if isinstance(value, (complex, np.complexfloating)):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def dumps(payload: Any) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False)


@dataclass
class Report:
    """Outcome of a check: a name, a verdict, structured details and free-text notes.

    Reports nest; a parent passes only if its own verdict and every child pass.
    """
    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)

    @classmethod
    def aggregate(cls, name: str, children: list["Report"], **details: Any) -> "Report":
        return cls(name, all(c.ok() for c in children), dict(details), [], list(children))

    def ok(self) -> bool:
        return self.passed and all(c.ok() for c in self.children)

    def failures(self) -> list[str]:
        out = [] if self.passed else [self.name]
        for child in self.children:
            out.extend("{}/{}".format(self.name, f) for f in child.failures())
        return out

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"name": self.name, "passed": self.ok()}
        if self.details:
            payload["details"] = jsonable(self.details)
        if self.notes:
            payload["notes"] = list(self.notes)
        if self.children:
            payload["checks"] = [c.to_json() for c in self.children]
        return payload

    def dumps(self) -> str:
        return dumps(self)

    def summary_lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        lines = ["{}{}: {}".format(pad, self.name, "pass" if self.ok() else "FAIL")]
        lines.extend("{}  note: {}".format(pad, n) for n in self.notes)
        for child in self.children:
            lines.extend(child.summary_lines(indent + 1))
        return lines
