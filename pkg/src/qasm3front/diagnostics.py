"""Diagnostics: the error-reporting currency of every stage.

Codes are a stable, machine-readable surface. Lexer and parser codes are
listed alongside the semantic ones so tooling has a single catalogue.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .span import SourceSpan


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


# lexical
LEX_CHAR = "E-LEX-CHAR"
LEX_UNTERMINATED = "E-LEX-UNTERMINATED"
LEX_NUMBER = "E-LEX-NUMBER"
# syntactic
SYNTAX = "E-SYNTAX"
VERSION = "E-VERSION"
UNSUPPORTED = "E-UNSUPPORTED"
NO_VERSION = "W-NO-VERSION"
UNRESOLVED_INCLUDE = "W-UNRESOLVED-INCLUDE"
# semantic
UNDEF_GATE = "E-UNDEF-GATE"
GATE_REDEF = "E-GATE-REDEF"
PARAM_ARITY = "E-PARAM-ARITY"
QUBIT_ARITY = "E-QUBIT-ARITY"
UNDEF_QUBIT = "E-UNDEF-QUBIT"
DUP_QUBIT = "E-DUP-QUBIT"
REDECLARE = "E-REDECLARE"
CONST_WRITE = "E-CONST-WRITE"
TYPE_MISMATCH = "E-TYPE-MISMATCH"
WIDTH_MISMATCH = "E-WIDTH-MISMATCH"
UNDEF_SYMBOL = "E-UNDEF-SYMBOL"
NAME_CLASH = "E-NAME-CLASH"

SEMANTIC_CODES = (
    UNDEF_GATE, GATE_REDEF, PARAM_ARITY, QUBIT_ARITY, UNDEF_QUBIT, DUP_QUBIT,
    REDECLARE, CONST_WRITE, TYPE_MISMATCH, WIDTH_MISMATCH, UNDEF_SYMBOL, NAME_CLASH,
)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan
    # secondary locations, e.g. the earlier declaration on a redeclare
    notes: tuple[tuple[str, SourceSpan], ...] = field(default=())

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self, path: str) -> str:
        """Render as ``path:line:col: severity[CODE]: message``."""
        return (f"{path}:{self.span.start_line}:{self.span.start_col}: "
                f"{self.severity.value}[{self.code}]: {self.message}")


def error(code: str, message: str, span: SourceSpan, notes=()) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span, tuple(notes))


def warning(code: str, message: str, span: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span)


def has_errors(diagnostics) -> bool:
    return any(d.is_error for d in diagnostics)
