"""Canonical JSON serialization for structures and spectrum reports.

Canonical form: sorted keys, no whitespace, one trailing newline — save/load
round trips are bit-exact so golden files diff cleanly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import (
    FiniteGroup,
    FiniteRing,
    format_rational,
    validate_group,
    validate_ring,
)
from .errors import ValidationError
from .spectrum import GateReport, Spectrum


def structure_to_dict(obj) -> dict:
    if isinstance(obj, FiniteGroup):
        return {
            "type": "group",
            "n": obj.n,
            "identity": obj.identity,
            "table": obj.table.tolist(),
        }
    if isinstance(obj, FiniteRing):
        return {
            "type": "ring",
            "invariants": list(obj.invariants),
            "sc": obj.sc.tolist(),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def structure_from_dict(doc: dict, name: str = ""):
    """Rebuild and fully validate a structure from its JSON document."""
    kind = doc.get("type")
    if kind == "group":
        table = doc["table"]
        if len(table) != doc.get("n", len(table)):
            raise ValidationError(f"group document says n={doc.get('n')} but the "
                                  f"table has {len(table)} rows")
        return validate_group(table, doc["identity"], name=name)
    if kind == "ring":
        return validate_ring(doc["invariants"], doc["sc"], name=name)
    raise ValidationError(f"unknown structure type {kind!r}")


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def save_structure(obj, path) -> None:
    Path(path).write_text(dumps_canonical(structure_to_dict(obj)), encoding="utf-8")


def load_structure(path):
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return structure_from_dict(doc, name=Path(path).stem)


def spectrum_report_dict(spectrum: Spectrum, gate: GateReport | None = None) -> dict:
    doc = {
        "family": spectrum.family,
        "poly": str(spectrum.poly),
        "values": [
            {"p_over_q": format_rational(v), "count": spectrum.counts[v]}
            for v in spectrum.values
        ],
    }
    if gate is not None:
        doc["gate32"] = {
            "pass": gate.passed,
            "violations": [
                {"p_over_q": format_rational(v), "witness": w}
                for v, w in gate.violations
            ],
        }
    return doc
