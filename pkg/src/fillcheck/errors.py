"""Exception hierarchy shared by all fillcheck modules."""

from __future__ import annotations


class FillcheckError(Exception):
    """Base class for every error raised by the library."""


class ParameterError(FillcheckError, ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class DomainError(FillcheckError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class PoleError(FillcheckError, ZeroDivisionError):
    """Evaluation hit a pole (for example a root of unity equal to 1)."""


class NotIsolatedError(FillcheckError, ValueError):
    """A nontrivial group element has eigenvalue 1."""


class SpecParseError(FillcheckError, ValueError):
    """An action spec string does not follow the grammar."""


class ConsistencyError(FillcheckError, RuntimeError):
    """An internal cross-check failed; results cannot be trusted."""
