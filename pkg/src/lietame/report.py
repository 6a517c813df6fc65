"""Report envelope, exact JSON encoding and aligned text tables."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    version: str = __version__

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results, "version": self.version}


def encode(obj):
    """Replace every Fraction by {"num": str, "den": str}, recursively."""
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return obj


_INT = re.compile(r"^-?[0-9]+$")


def _decode_hook(d):
    if set(d) == {"num", "den"} and all(isinstance(v, str) and _INT.match(v) for v in d.values()):
        if int(d["den"]) > 0:
            return Fraction(int(d["num"]), int(d["den"]))
    return d


def emit_json(report: Report) -> str:
    return json.dumps(encode(report.to_dict()), ensure_ascii=False, indent=2) + "\n"


def parse_json(text: str) -> Report:
    d = json.loads(text, object_hook=_decode_hook)
    return Report(d["command"], d["inputs"], d["results"], d["version"])


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_cell(x)}" for k, x in v.items()) + "}"
    return str(v)


def _numeric(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def render_table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["(none)"]
    cols = list(rows[0])
    for r in rows[1:]:
        cols.extend(c for c in r if c not in cols)
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    right = [all(_numeric(r.get(c)) or r.get(c) is None for r in rows) for c in cols]

    def fmt(vals):
        return "  ".join(v.rjust(w) if rj else v.ljust(w) for v, w, rj in zip(vals, widths, right)).rstrip()

    out = [fmt(cols), fmt(["-" * w for w in widths])]
    out.extend(fmt(row) for row in cells)
    return out


def emit_table(report: Report) -> str:
    lines = [f"{report.command} ({', '.join(f'{k}={_cell(v)}' for k, v in report.inputs.items())})"]
    for key, value in report.results.items():
        if isinstance(value, list) and value and all(isinstance(x, dict) for x in value):
            lines.append(f"{key}:")
            lines.extend("  " + ln for ln in render_table(value))
        elif isinstance(value, list) and not value:
            lines.append(f"{key}: (none)")
        else:
            lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json") -> bytes:
    text = emit_json(report) if fmt == "json" else emit_table(report)
    return text.encode("utf-8")
