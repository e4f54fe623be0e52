"""JSON encoding of exact values and reports.

Rationals become ``{"num": "<int>", "den": "<int>"}`` with decimal strings.
Integers small enough to be exact in IEEE doubles stay JSON integers; larger
ones are written as rationals with denominator 1. No float is ever emitted.
"""

from __future__ import annotations

from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Dict

from .obstruct import ObstructionReport, Verdict

__all__ = ["to_jsonable", "rational_json", "report_to_dict", "RATIONAL_SCHEMA", "REPORT_SCHEMA"]

_SAFE_INT = 2**53


def rational_json(x: Fraction | int) -> Dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < _SAFE_INT else rational_json(obj)
    if isinstance(obj, Fraction):
        return rational_json(obj)
    if isinstance(obj, float):
        raise TypeError("floating point values are not serialized")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _verdict_dict(v: Verdict) -> Dict[str, Any]:
    return {
        "theorem_id": v.theorem_id,
        "applicable": v.applicable,
        "conclusion": v.conclusion,
        "witness": to_jsonable(v.witness),
        "note": v.note,
    }


def report_to_dict(report: ObstructionReport) -> Dict[str, Any]:
    return {
        "spec": report.spec,
        "isolated": report.isolated,
        "terminal": report.terminal,
        "md": to_jsonable(report.md),
        "conj_count": report.conj_count,
        "hmi": to_jsonable(report.hmi),
        "predicted_rank": report.predicted_rank,
        "degree_labels": to_jsonable(list(report.degree_labels)),
        "cup_length_bound": report.cup_length_bound,
        "verdicts": [_verdict_dict(v) for v in report.verdicts],
        "conclusion": report.conclusion,
    }


RATIONAL_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "num": {"type": "string", "pattern": "^-?[0-9]+$"},
        "den": {"type": "string", "pattern": "^[1-9][0-9]*$"},
    },
    "required": ["num", "den"],
    "additionalProperties": False,
}

_CONCLUSION = {"enum": ["NOT_EXACTLY_FILLABLE", "NO_VERDICT"]}

REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "spec": {"type": "string"},
        "isolated": {"type": "boolean"},
        "terminal": {"type": "boolean"},
        "md": {"oneOf": [RATIONAL_SCHEMA, {"type": "null"}]},
        "conj_count": {"type": "integer", "minimum": 1},
        "hmi": {"oneOf": [RATIONAL_SCHEMA, {"type": "null"}]},
        "predicted_rank": {"type": ["integer", "null"]},
        "degree_labels": {"type": "array", "items": RATIONAL_SCHEMA},
        "cup_length_bound": {"type": ["integer", "null"]},
        "verdicts": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "theorem_id": {"type": "string"},
                    "applicable": {"type": "boolean"},
                    "conclusion": _CONCLUSION,
                    "witness": {"type": "object"},
                    "note": {"type": "string"},
                },
                "required": ["theorem_id", "applicable", "conclusion", "witness", "note"],
                "additionalProperties": False,
            },
        },
        "conclusion": _CONCLUSION,
    },
    "required": [
        "spec",
        "isolated",
        "terminal",
        "md",
        "conj_count",
        "hmi",
        "predicted_rank",
        "degree_labels",
        "cup_length_bound",
        "verdicts",
        "conclusion",
    ],
    "additionalProperties": False,
}
