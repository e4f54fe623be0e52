"""Exact arithmetic engine for obstructions to exact fillings of quotient-singularity links."""

from __future__ import annotations

from .errors import (
    ConsistencyError,
    DomainError,
    FillcheckError,
    NotIsolatedError,
    ParameterError,
    PoleError,
    SpecParseError,
)
from .groups import ActionSpec, format_spec, parse_spec
from .obstruct import (
    NO_VERDICT,
    NOT_EXACTLY_FILLABLE,
    ObstructionReport,
    Verdict,
    analyze,
    orbifold_defect,
    recheck,
    rp_pipeline,
    z3_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "ActionSpec",
    "ConsistencyError",
    "DomainError",
    "FillcheckError",
    "NO_VERDICT",
    "NOT_EXACTLY_FILLABLE",
    "NotIsolatedError",
    "ObstructionReport",
    "ParameterError",
    "PoleError",
    "SpecParseError",
    "Verdict",
    "analyze",
    "format_spec",
    "orbifold_defect",
    "parse_spec",
    "recheck",
    "rp_pipeline",
    "z3_pipeline",
]
