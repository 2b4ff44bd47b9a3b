"""Machine-readable command reports.

JSON schema (all keys always present)::

    {
      "command": str,
      "inputs": {str: str},
      "ok": bool,
      "classes": {name: {degree: {basis monomial: "p/q"}}},
      "verdicts": {name: bool},
      "integrality": {name: bool},
      "details": {str: JSON value},
      "error": null | {"code": str, "message": str, "line": int, "column": int},
      "timing": null | float
    }

Degrees are decimal strings; rationals use ``str(Fraction)`` ("3", "-1/2").
Identical inputs produce byte-identical output as long as ``timing`` is off.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .poly import format_monomial, format_terms
from .ring import Cls


@dataclass
class Report:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    ok: bool = True
    classes: dict[str, dict[str, dict[str, str]]] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    integrality: dict[str, bool] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    error: dict[str, Any] | None = None
    timing: float | None = None

    def add_class(self, name: str, x: Cls, max_degree: int | None = None) -> None:
        self.classes[name] = encode_class(x, max_degree)

    def add_verdict(self, name: str, passed: bool) -> None:
        self.verdicts[name] = bool(passed)
        if not passed:
            self.ok = False

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls(**json.loads(text))


def encode_class(x: Cls, max_degree: int | None = None) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {}
    for d in x.degrees():
        if max_degree is not None and d > max_degree:
            continue
        names = x.ring.names
        out[str(d)] = {
            format_monomial(m, names): str(c) for m, c in zip(x.ring.basis[d], x.comp[d]) if c
        }
    return out


def render_class(encoded: dict[str, dict[str, str]]) -> list[str]:
    if not encoded:
        return ["0"]
    lines = []
    for d in sorted(encoded, key=int):
        terms = format_terms((Fraction(c), m) for m, c in encoded[d].items())
        lines.append(f"deg {d}: {terms}")
    return lines


def emit_json(r: Report) -> str:
    return json.dumps(asdict(r), sort_keys=True, indent=2) + "\n"


def _render_detail(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def emit_text(r: Report) -> str:
    lines = [f"command: {r.command}"]
    lines += [f"{k}: {v}" for k, v in r.inputs.items()]
    if r.error:
        where = ""
        if r.error.get("line"):
            where = f" (line {r.error['line']}, column {r.error['column']})"
        lines.append(f"error {r.error['code']}{where}: {r.error['message']}")
    for name, enc in r.classes.items():
        body = render_class(enc)
        if len(body) == 1:
            lines.append(f"class {name}: {body[0]}")
        else:
            lines.append(f"class {name}:")
            lines += [f"  {b}" for b in body]
    for name, passed in r.verdicts.items():
        lines.append(f"verdict {name}: {'pass' if passed else 'FAIL'}")
    for name, passed in r.integrality.items():
        lines.append(f"integrality {name}: {'pass' if passed else 'FAIL'}")
    for name, value in r.details.items():
        lines.append(f"{name}: {_render_detail(value)}")
    if r.timing is not None:
        lines.append(f"timing: {r.timing:.6f}s")
    lines.append(f"result: {'pass' if r.ok and not r.error else 'FAIL' if not r.error else 'ERROR'}")
    return "\n".join(lines) + "\n"


def emit_report(r: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return emit_json(r)
    if fmt == "text":
        return emit_text(r)
    raise ValueError(f"unknown report format {fmt!r}")
