"""qasm3front: an OpenQASM 3.0 frontend.

Lexing, precedence-correct recursive-descent parsing into a span-annotated
AST, semantic checks against a gate registry and scoped symbol tables,
canonical JSON/text serialization, a CLI and a corpus benchmark harness.
"""

from . import ast
from .diagnostics import Diagnostic, Severity, has_errors
from .lexer import tokenize
from .semantics import analyze
from .serializer import deserialize_program, render_canonical, serialize_program
from .span import SourceSpan
from .stmt_parser import ParseOutcome, parse

__version__ = "0.1.0"

__all__ = [
    "Diagnostic", "ParseOutcome", "Severity", "SourceSpan", "analyze", "ast",
    "deserialize_program", "has_errors", "parse", "render_canonical",
    "serialize_program", "tokenize",
]
