"""Structured error reports shared by the kernel, the engine and the CLI."""
from __future__ import annotations

import json
from dataclasses import dataclass

E_SCOPE = "E-SCOPE"
E_MISMATCH = "E-MISMATCH"
E_NOTFN = "E-NOTFN"
E_UNIV = "E-UNIV"
E_FUEL = "E-FUEL"
E_PARSE = "E-PARSE"
E_NOTSTABLE = "E-NOTSTABLE"
E_DUPNAME = "E-DUPNAME"

CODES = frozenset({E_SCOPE, E_MISMATCH, E_NOTFN, E_UNIV, E_FUEL, E_PARSE, E_NOTSTABLE, E_DUPNAME})


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span ends before it starts: {self}")

    def __str__(self):
        return f"{self.file}:{self.start_line}:{self.start_col}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    expected: object = None  # Term, kept untyped to avoid an import cycle
    actual: object = None
    location: SourceSpan | None = None

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def at(self, span: SourceSpan | None) -> Diagnostic:
        """Same diagnostic, located at ``span`` unless it already has a location."""
        if span is None or self.location is not None:
            return self
        return Diagnostic(self.code, self.message, self.expected, self.actual, span)


class ClariError(Exception):
    """Raised with a Diagnostic whenever checking, parsing or loading fails."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(f"{diagnostic.code}: {diagnostic.message}")
        self.diagnostic = diagnostic


def error(code: str, message: str, expected=None, actual=None, location=None) -> ClariError:
    return ClariError(Diagnostic(code, message, expected, actual, location))


def format_diagnostic(d: Diagnostic, as_json: bool = False) -> str:
    """Render a diagnostic as ``file:line:col: error[CODE]: message`` or one JSON object."""
    from .syntax import show  # local: syntax imports diagnostics

    expected = show(d.expected) if d.expected is not None else None
    actual = show(d.actual) if d.actual is not None else None
    loc = d.location
    if as_json:
        return json.dumps({
            "code": d.code,
            "message": d.message,
            "file": loc.file if loc else None,
            "startLine": loc.start_line if loc else None,
            "startCol": loc.start_col if loc else None,
            "endLine": loc.end_line if loc else None,
            "endCol": loc.end_col if loc else None,
            "expected": expected,
            "actual": actual,
        }, ensure_ascii=False)
    head = f"{loc}: " if loc else ""
    lines = [f"{head}error[{d.code}]: {d.message}"]
    if expected is not None:
        lines.append(f"  expected: {expected}")
    if actual is not None:
        lines.append(f"  actual:   {actual}")
    return "\n".join(lines)
