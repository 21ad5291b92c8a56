"""Token kinds and the token record handed from the lexer to the parser."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .span import SourceSpan


class TokenKind(enum.Enum):
    # keywords
    OPENQASM = "OPENQASM"
    INCLUDE = "include"
    QUBIT = "qubit"
    QREG = "qreg"
    BIT = "bit"
    CREG = "creg"
    INT = "int"
    UINT = "uint"
    FLOAT = "float"
    ANGLE = "angle"
    BOOL = "bool"
    COMPLEX = "complex"
    DURATION = "duration"
    STRETCH = "stretch"
    ARRAY = "array"
    CONST = "const"
    LET = "let"
    INPUT = "input"
    OUTPUT = "output"
    GATE = "gate"
    DEF = "def"
    EXTERN = "extern"
    RETURN = "return"
    IF = "if"
    ELSE = "else"
    FOR = "for"
    WHILE = "while"
    IN = "in"
    BREAK = "break"
    CONTINUE = "continue"
    END = "end"
    MEASURE = "measure"
    RESET = "reset"
    BARRIER = "barrier"
    DELAY = "delay"
    BOX = "box"
    DURATIONOF = "durationof"
    SIZEOF = "sizeof"
    CTRL = "ctrl"
    NEGCTRL = "negctrl"
    INV = "inv"
    POW = "pow"
    TRUE = "true"
    FALSE = "false"
    DEFCAL = "defcal"
    CAL = "cal"
    DEFCALGRAMMAR = "defcalgrammar"
    PRAGMA = "pragma"

    IDENTIFIER = "identifier"
    HARDWARE_QUBIT = "hardware qubit"

    # literals
    INTEGER_LITERAL = "integer literal"
    FLOAT_LITERAL = "float literal"
    IMAGINARY_LITERAL = "imaginary literal"
    BITSTRING_LITERAL = "bitstring literal"
    TIMING_LITERAL = "timing literal"
    STRING_LITERAL = "string literal"

    # operators
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    PERCENT = "%"
    DOUBLE_STAR = "**"
    EQ = "=="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    SHL = "<<"
    SHR = ">>"
    AMP = "&"
    PIPE = "|"
    CARET = "^"
    TILDE = "~"
    BANG = "!"
    AND_AND = "&&"
    OR_OR = "||"
    ASSIGN = "="
    PLUS_ASSIGN = "+="
    MINUS_ASSIGN = "-="
    STAR_ASSIGN = "*="
    SLASH_ASSIGN = "/="
    AMP_ASSIGN = "&="
    PIPE_ASSIGN = "|="
    CARET_ASSIGN = "^="
    SHL_ASSIGN = "<<="
    SHR_ASSIGN = ">>="
    PERCENT_ASSIGN = "%="
    POW_ASSIGN = "**="
    DOUBLE_PLUS = "++"
    ARROW = "->"
    AT = "@"

    # punctuation
    LPAREN = "("
    RPAREN = ")"
    LBRACKET = "["
    RBRACKET = "]"
    LBRACE = "{"
    RBRACE = "}"
    COMMA = ","
    SEMICOLON = ";"
    COLON = ":"
    DOT = "."

    ANNOTATION = "annotation"
    ERROR = "error"
    EOF = "end of file"

    def __str__(self) -> str:
        return self.value


_WORD_KINDS = frozenset({TokenKind.IDENTIFIER, TokenKind.ANNOTATION, TokenKind.ERROR})

KEYWORDS: dict[str, TokenKind] = {
    k.value: k for k in TokenKind
    if k.value.isidentifier() and k not in _WORD_KINDS
}

LITERAL_KINDS = frozenset({
    TokenKind.INTEGER_LITERAL, TokenKind.FLOAT_LITERAL, TokenKind.IMAGINARY_LITERAL,
    TokenKind.BITSTRING_LITERAL, TokenKind.TIMING_LITERAL, TokenKind.STRING_LITERAL,
})

# Longest first so the scanner can take the first prefix match.
OPERATORS: list[tuple[str, TokenKind]] = sorted(
    ((k.value, k) for k in TokenKind
     if k.value and not k.value[0].isalnum() and " " not in k.value),
    key=lambda item: -len(item[0]),
)

ASSIGNMENT_OPERATORS = frozenset({
    TokenKind.ASSIGN, TokenKind.PLUS_ASSIGN, TokenKind.MINUS_ASSIGN,
    TokenKind.STAR_ASSIGN, TokenKind.SLASH_ASSIGN, TokenKind.AMP_ASSIGN,
    TokenKind.PIPE_ASSIGN, TokenKind.CARET_ASSIGN, TokenKind.SHL_ASSIGN,
    TokenKind.SHR_ASSIGN, TokenKind.PERCENT_ASSIGN, TokenKind.POW_ASSIGN,
})

TIME_UNITS = ("dt", "ns", "us", "µs", "ms", "s")


@dataclass(frozen=True)
class Bitstring:
    """Payload of a bitstring literal: the bits, most significant first."""

    bits: str

    @property
    def width(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return int(self.bits, 2)


@dataclass(frozen=True)
class Timing:
    magnitude: int | float
    unit: str


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan
    # int for integers, float for floats, int|float for imaginaries,
    # Timing, Bitstring, or str for string literals
    value: Any = None

    def __repr__(self) -> str:
        if self.value is not None:
            return f"Token({self.kind.name}, {self.lexeme!r}, {self.value!r})"
        return f"Token({self.kind.name}, {self.lexeme!r})"
