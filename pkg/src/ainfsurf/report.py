"""Deterministic text and JSON renderings of computed results.

A report is ``{"command", "params", "results": [...]}``; each result has a
``cell``, a ``k`` or ``relation`` index, the ``terms`` of an element as
``{"coeff", "word"}`` records in canonical order, and optionally ``holds``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .chains import TENSOR, TensorElement, format_terms
from .relation import RelationReport


def terms_json(x: TensorElement) -> list[dict]:
    return [{"coeff": a, "word": [c.label for c in w]} for w, a in x.items()]


def terms_text(terms: list[dict]) -> str:
    return format_terms((TENSOR.join(t["word"]), t["coeff"]) for t in terms)


def entry(cell: str, value: TensorElement | None = None, *, holds: bool | None = None, **extra: Any) -> dict:
    """One result record with a fixed key order."""
    out: dict = {"cell": cell}
    for key in ("k", "relation"):
        if key in extra:
            out[key] = extra.pop(key)
    out.update(extra)
    out["terms"] = terms_json(value) if value is not None else []
    if holds is not None:
        out["holds"] = holds
    return out


def relation_entries(report: RelationReport, **extra: Any) -> list[dict]:
    rows = []
    for cell, defect in report.defects.items():
        counts = report.term_counts.get(cell, {})
        rows.append(
            entry(
                cell.label,
                defect,
                relation=report.n,
                **extra,
                lhs_terms=counts.get("lhs", 0),
                rhs_terms=counts.get("rhs", 0),
                holds=defect.is_zero(),
            )
        )
    return rows


@dataclass
class Report:
    command: str
    params: dict
    results: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.get("holds", True) for r in self.results)

    def to_dict(self) -> dict:
        return {"command": self.command, "params": self.params, "results": self.results}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(data["command"], data["params"], data["results"])

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        params = " ".join(f"{k}={_scalar(v)}" for k, v in self.params.items())
        lines.append(f"params: {params}")
        for r in self.results:
            lines.append(_text_line(r))
        lines.append(f"status: {'ok' if self.ok else 'FAILED'}")
        return "\n".join(lines) + "\n"


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return ",".join(_scalar(x) for x in v)
    return str(v)


_SKIP = {"cell", "terms", "holds", "label", "k", "relation", "matrix"}


def _text_line(r: dict) -> str:
    head = r.get("label", "")
    if "k" in r:
        op = f"Δ{r['k']}({r['cell']})"
    elif "relation" in r:
        op = f"relation {r['relation']} at {r['cell']}"
    else:
        op = r["cell"]
    extras = " ".join(f"{k}={_scalar(v)}" for k, v in r.items() if k not in _SKIP)
    parts = [p for p in (head, op, extras) if p]
    line = " ".join(parts)
    if "matrix" in r:
        rows = "; ".join(" ".join(str(x) for x in row) for row in r["matrix"])
        line += f" = [{rows}]"
    else:
        line += f" = {terms_text(r['terms'])}"
    if "holds" in r:
        line += f"  holds: {_scalar(r['holds'])}"
    return line
