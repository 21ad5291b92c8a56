"""Hand-written scanner for OpenQASM 3.0 source text.

The scanner never aborts: unrecognised characters are reported and
skipped, malformed literals become ``ERROR`` tokens, and scanning carries
on so that every problem in a file surfaces in one pass.
"""

from __future__ import annotations

import bisect
import re

from . import diagnostics as diag
from .diagnostics import Diagnostic
from .span import SourceSpan
from .tokens import (
    KEYWORDS, OPERATORS, TIME_UNITS, Bitstring, Timing, Token, TokenKind,
)

MICRO = "µ"

_WHITESPACE = re.compile(r"\s+")
_WORD_TAIL = re.compile(r"\w*")
# suffix run after a number: letters, digits, underscores and the micro sign
_SUFFIX = re.compile(r"[\w" + MICRO + r"]*")
_DIGITS = re.compile(r"[0-9]+")
_ANNOTATION_TAIL = re.compile(r"[\w.]*")
_DEC_DIGITS = re.compile(r"[0-9_]*")
_EXPONENT = re.compile(r"[eE][+-]?[0-9]+")
_DECIMAL = re.compile(r"[0-9](_?[0-9])*\Z")
_BITSTRING = re.compile(r"[01](_?[01])*\Z")
_RADIX_DIGITS = {
    2: re.compile(r"[01](_?[01])*\Z"),
    8: re.compile(r"[0-7](_?[0-7])*\Z"),
    16: re.compile(r"[0-9a-fA-F](_?[0-9a-fA-F])*\Z"),
}
_RADIX_PREFIX = {"0b": 2, "0B": 2, "0o": 8, "0x": 16, "0X": 16}


def is_identifier_start(ch: str) -> bool:
    # the micro sign only ever appears as part of the `µs` unit
    return ch == "_" or (ch.isalpha() and ch != MICRO)


class Lexer:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", source)]

    # -- positions ---------------------------------------------------------

    def location(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self._line_starts, offset)
        return line, offset - self._line_starts[line - 1] + 1

    def span(self, start: int, end: int) -> SourceSpan:
        sl, sc = self.location(start)
        el, ec = self.location(end)
        return SourceSpan(start, end, sl, sc, el, ec)

    def _line_end(self, offset: int) -> int:
        end = self.source.find("\n", offset)
        return len(self.source) if end < 0 else end

    def _make(self, kind: TokenKind, start: int, value=None) -> Token:
        return Token(kind, self.source[start:self.pos], self.span(start, self.pos), value)

    def _error(self, code: str, message: str, start: int, end: int) -> None:
        self.diagnostics.append(diag.error(code, message, self.span(start, end)))

    # -- driver ------------------------------------------------------------

    def tokenize(self) -> tuple[list[Token], list[Diagnostic]]:
        src = self.source
        n = len(src)
        while True:
            self._skip_trivia()
            if self.pos >= n:
                break
            ch = src[self.pos]
            if ch.isdigit() or (ch == "." and src[self.pos + 1:self.pos + 2].isdigit()):
                self.tokens.append(self.scan_numeric_literal())
            elif is_identifier_start(ch):
                self.tokens.append(self.scan_identifier_or_keyword())
            elif ch == '"' or ch == "'":
                self.tokens.append(self.scan_bitstring_literal())
            elif ch == "$":
                self._scan_hardware_qubit()
            elif ch == "@" and self._at_annotation():
                start = self.pos
                self.pos += 1
                self.pos = _ANNOTATION_TAIL.match(src, self.pos).end()
                self.tokens.append(self._make(TokenKind.ANNOTATION, start))
            elif src.startswith("#pragma", self.pos):
                start = self.pos
                self.pos += len("#pragma")
                self.tokens.append(self._make(TokenKind.PRAGMA, start))
            else:
                self._scan_operator()
        self.tokens.append(Token(TokenKind.EOF, "", self.span(n, n)))
        return self.tokens, self.diagnostics

    def _skip_trivia(self) -> None:
        src = self.source
        while True:
            m = _WHITESPACE.match(src, self.pos)
            if m:
                self.pos = m.end()
            if src.startswith("//", self.pos):
                self.pos = self._line_end(self.pos)
            elif src.startswith("/*", self.pos):
                close = src.find("*/", self.pos + 2)
                if close < 0:
                    self._error(diag.LEX_UNTERMINATED, "unterminated block comment",
                                self.pos, len(src))
                    self.pos = len(src)
                else:
                    self.pos = close + 2
            else:
                return

    def _at_annotation(self) -> bool:
        nxt = self.source[self.pos + 1:self.pos + 2]
        if not nxt or not is_identifier_start(nxt):
            return False
        if not self.tokens:
            return True
        prev = self.tokens[-1]
        if prev.kind in (TokenKind.SEMICOLON, TokenKind.LBRACE, TokenKind.RBRACE):
            return True
        line_start = self._line_starts[self.location(self.pos)[0] - 1]
        return self.source[line_start:self.pos].strip() == ""

    # -- scanners ----------------------------------------------------------

    def scan_numeric_literal(self) -> Token:
        """Longest-match scan of an integer, float, imaginary or timing literal."""
        src = self.source
        start = self.pos
        prefix = src[start:start + 2]
        if prefix in _RADIX_PREFIX:
            radix = _RADIX_PREFIX[prefix]
            self.pos = _SUFFIX.match(src, start + 2).end()
            digits = src[start + 2:self.pos]
            if not _RADIX_DIGITS[radix].match(digits):
                what = "missing digits" if not digits else f"invalid digit for base {radix}"
                self._error(diag.LEX_NUMBER, f"malformed integer literal ({what})", start, self.pos)
                return self._make(TokenKind.ERROR, start)
            return self._make(TokenKind.INTEGER_LITERAL, start, int(digits.replace("_", ""), radix))

        self.pos = _DEC_DIGITS.match(src, start).end()
        int_part = src[start:self.pos]
        is_float = False
        frac_digits = ""
        if src.startswith(".", self.pos):
            is_float = True
            self.pos = _DEC_DIGITS.match(src, self.pos + 1).end()
            frac_digits = src[start + len(int_part) + 1:self.pos]
        m = _EXPONENT.match(src, self.pos)
        if m:
            is_float = True
            self.pos = m.end()
        number_end = self.pos
        self.pos = _SUFFIX.match(src, self.pos).end()
        suffix = src[number_end:self.pos]

        well_formed = (
            (not int_part or _DECIMAL.match(int_part))
            and (not frac_digits or _DECIMAL.match(frac_digits))
            and (int_part or frac_digits)
        )
        if not well_formed or (suffix and suffix != "im" and suffix not in TIME_UNITS):
            self._error(diag.LEX_NUMBER, f"malformed numeric literal {src[start:self.pos]!r}",
                        start, self.pos)
            return self._make(TokenKind.ERROR, start)

        text = src[start:number_end].replace("_", "")
        number: int | float = float(text) if is_float else int(text)
        if suffix == "im":
            return self._make(TokenKind.IMAGINARY_LITERAL, start, number)
        if suffix:
            return self._make(TokenKind.TIMING_LITERAL, start, Timing(number, suffix))
        kind = TokenKind.FLOAT_LITERAL if is_float else TokenKind.INTEGER_LITERAL
        return self._make(kind, start, number)

    def scan_identifier_or_keyword(self) -> Token:
        start = self.pos
        self.pos = _WORD_TAIL.match(self.source, start + 1).end()
        word = self.source[start:self.pos]
        return self._make(KEYWORDS.get(word, TokenKind.IDENTIFIER), start)

    def scan_bitstring_literal(self) -> Token:
        """Scan a quoted literal; binary-only content makes it a bitstring."""
        src = self.source
        start = self.pos
        quote = src[start]
        line_end = self._line_end(start)
        close = src.find(quote, start + 1, line_end)
        if close < 0:
            self._error(diag.LEX_UNTERMINATED, "unterminated string literal", start, line_end)
            self.pos = line_end
            return self._make(TokenKind.ERROR, start)
        self.pos = close + 1
        content = src[start + 1:close]
        if quote == '"' and _BITSTRING.match(content):
            return self._make(TokenKind.BITSTRING_LITERAL, start, Bitstring(content.replace("_", "")))
        return self._make(TokenKind.STRING_LITERAL, start, content)

    def _scan_hardware_qubit(self) -> None:
        start = self.pos
        m = _DIGITS.match(self.source, start + 1)
        if m is None:
            self.pos += 1
            self._error(diag.LEX_CHAR, "expected digits after '$'", start, self.pos)
            return
        self.pos = m.end()
        self.tokens.append(self._make(TokenKind.HARDWARE_QUBIT, start, int(m.group())))

    def _scan_operator(self) -> None:
        src = self.source
        for text, kind in OPERATORS:
            if src.startswith(text, self.pos):
                start = self.pos
                self.pos += len(text)
                self.tokens.append(self._make(kind, start))
                return
        start = self.pos
        self.pos += 1
        self._error(diag.LEX_CHAR, f"unexpected character {src[start]!r}", start, self.pos)


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Tokenize ``source``; the token list always ends with a single EOF."""
    return Lexer(source).tokenize()


def skipped_regions(source: str, tokens: list[Token]) -> list[tuple[int, int]]:
    """Offsets of the source text not covered by any token."""
    regions = []
    cursor = 0
    for tok in tokens:
        if tok.span.start_offset > cursor:
            regions.append((cursor, tok.span.start_offset))
        cursor = max(cursor, tok.span.end_offset)
    if cursor < len(source):
        regions.append((cursor, len(source)))
    return regions


def reconstruct(source: str, tokens: list[Token]) -> str:
    """Interleave token lexemes with the skipped regions, in source order."""
    pieces = [(t.span.start_offset, 1, t.lexeme) for t in tokens]
    pieces += [(a, 0, source[a:b]) for a, b in skipped_regions(source, tokens)]
    return "".join(text for _, _, text in sorted(pieces, key=lambda p: p[:2]))
