"""Shared diagnostics and exception types."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Diagnostic:
    """One machine-readable finding from profile or scenario validation."""

    severity: str  # "error" | "warning"
    code: str
    message: str
    source: str | None = None  # file path or dotted field path
    line: int | None = None

    def as_dict(self) -> dict:
        d = {"severity": self.severity, "code": self.code, "message": self.message}
        if self.source is not None:
            d["source"] = self.source
        if self.line is not None:
            d["line"] = self.line
        return d


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)


class ValidationError(ValueError):
    """Raised when a profile or scenario fails validation; carries diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = next((d for d in diagnostics if d.severity == "error"), None)
        msg = first.message if first else "validation failed"
        super().__init__(msg)


class InfeasibleError(ValueError):
    """A solver target cannot be met; `code` is a machine-readable reason."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


class StageError(RuntimeError):
    """Pipeline failure attributed to a named evaluation stage."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}': {cause}")
