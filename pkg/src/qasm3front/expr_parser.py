"""Expression parsing by precedence climbing.

Binding powers, weakest to tightest::

    1 ||   2 &&   3 |   4 ^   5 &   6 == !=   7 < <= > >=   8 << >>
    9 + -   10 * / %   11 unary - ~ !   12 ** (right-assoc)

Postfix indexing and calls bind tighter than everything. ``**`` binding
tighter than unary minus means ``-2 ** 2`` is ``-(2 ** 2)``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from . import ast
from . import diagnostics as diag
from .diagnostics import Diagnostic
from .span import SourceSpan
from .tokens import Token, TokenKind

K = TokenKind


@dataclass(frozen=True)
class BindingPower:
    level: int
    associativity: str = "left"


BINARY_POWER: dict[str, BindingPower] = {
    "||": BindingPower(1), "&&": BindingPower(2), "|": BindingPower(3),
    "^": BindingPower(4), "&": BindingPower(5),
    "==": BindingPower(6), "!=": BindingPower(6),
    "<": BindingPower(7), "<=": BindingPower(7), ">": BindingPower(7), ">=": BindingPower(7),
    "<<": BindingPower(8), ">>": BindingPower(8),
    "+": BindingPower(9), "-": BindingPower(9),
    "*": BindingPower(10), "/": BindingPower(10), "%": BindingPower(10),
    "**": BindingPower(12, "right"),
}
UNARY_POWER = 11
UNARY_OPERATORS = ("-", "~", "!")

_BINARY_KINDS = {TokenKind(op): op for op in BINARY_POWER}
_UNARY_KINDS = {TokenKind(op): op for op in UNARY_OPERATORS}

SCALAR_TYPE_KINDS = frozenset({
    K.BIT, K.INT, K.UINT, K.FLOAT, K.ANGLE, K.BOOL, K.COMPLEX, K.DURATION, K.STRETCH,
})
_WIDTH_TYPES = {
    K.BIT: ast.BitType, K.INT: ast.IntType, K.UINT: ast.UintType,
    K.FLOAT: ast.FloatType, K.ANGLE: ast.AngleType,
}
_PLAIN_TYPES = {K.BOOL: ast.BoolType, K.DURATION: ast.DurationType, K.STRETCH: ast.StretchType}


class ParseError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class ExpressionParser:
    """Token cursor plus the expression and type-specifier productions."""

    def __init__(self, tokens: list[Token], source: str | None = None):
        if not tokens or tokens[-1].kind is not K.EOF:
            raise ValueError("token sequence must end with EOF")
        self.tokens = tokens
        self.source = source
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- cursor ------------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    @property
    def previous(self) -> Token:
        return self.tokens[self.pos - 1] if self.pos else self.tokens[0]

    def at(self, *kinds: TokenKind) -> bool:
        return self.current.kind in kinds

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not K.EOF:
            self.pos += 1
        return tok

    def accept(self, kind: TokenKind) -> Token | None:
        return self.advance() if self.current.kind is kind else None

    def expect(self, kind: TokenKind, context: str = "") -> Token:
        if self.current.kind is kind:
            return self.advance()
        where = f" {context}" if context else ""
        raise self.error(f"expected '{kind}'{where}, found {self._describe(self.current)}")

    def close(self, kind: TokenKind, opener: Token) -> Token:
        """Expect the closing bracket for ``opener``; report at the opener if missing."""
        if self.current.kind is kind:
            return self.advance()
        raise self.error(f"unclosed '{opener.lexeme}'", opener.span)

    def error(self, message: str, span: SourceSpan | None = None,
              code: str = diag.SYNTAX) -> ParseError:
        return ParseError(diag.error(code, message, span or self.current.span))

    def span_from(self, start: Token | SourceSpan) -> SourceSpan:
        first = start.span if isinstance(start, Token) else start
        if self.pos == 0:
            return first
        return first.merge(self.previous.span)

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of file" if tok.kind is K.EOF else repr(tok.lexeme)

    # -- expressions -------------------------------------------------------

    def parse_expression(self, min_power: int = 1) -> ast.Expression:
        return self.parse_binary_rhs(self.parse_unary_or_primary(), min_power)

    def parse_binary_rhs(self, left: ast.Expression, min_power: int = 1) -> ast.Expression:
        """Extend an already-parsed ``left`` operand with binary operators."""
        while True:
            op = _BINARY_KINDS.get(self.current.kind)
            if op is None:
                return left
            power = BINARY_POWER[op]
            if power.level < min_power:
                return left
            self.advance()
            next_min = power.level if power.associativity == "right" else power.level + 1
            right = self.parse_expression(next_min)
            left = ast.Binary(op, left, right, span=left.span.merge(right.span))

    def parse_unary_or_primary(self) -> ast.Expression:
        tok = self.current
        op = _UNARY_KINDS.get(tok.kind)
        if op is not None:
            self.advance()
            operand = self.parse_expression(UNARY_POWER)
            return ast.Unary(op, operand, span=tok.span.merge(operand.span))
        return self.parse_postfix(self._parse_atom())

    def _parse_atom(self) -> ast.Expression:
        tok = self.current
        kind = tok.kind
        span = tok.span
        if kind is K.INTEGER_LITERAL:
            self.advance()
            return ast.IntegerLit(tok.value, span=span)
        if kind is K.FLOAT_LITERAL:
            self.advance()
            return ast.FloatLit(tok.value, span=span)
        if kind is K.IMAGINARY_LITERAL:
            self.advance()
            return ast.ImaginaryLit(tok.value, span=span)
        if kind is K.TIMING_LITERAL:
            self.advance()
            return ast.TimingLit(tok.value.magnitude, tok.value.unit, span=span)
        if kind is K.BITSTRING_LITERAL:
            self.advance()
            return ast.BitstringLit(tok.value.bits, span=span)
        if kind in (K.TRUE, K.FALSE):
            self.advance()
            return ast.BooleanLit(kind is K.TRUE, span=span)
        if kind is K.IDENTIFIER:
            self.advance()
            return ast.Identifier(tok.lexeme, span=span)
        if kind is K.HARDWARE_QUBIT:
            self.advance()
            return ast.HardwareQubit(tok.value, span=span)
        if kind is K.LPAREN:
            self.advance()
            inner = self.parse_expression()
            self.close(K.RPAREN, tok)
            return dataclasses.replace(inner, span=self.span_from(tok))
        if kind in SCALAR_TYPE_KINDS:
            return self.parse_cast(self.parse_type_specifier(), tok)
        if kind is K.DURATIONOF:
            self.advance()
            opener = self.expect(K.LPAREN, "after durationof")
            body = self.parse_scope_block()
            self.close(K.RPAREN, opener)
            return ast.DurationOf(body, span=self.span_from(tok))
        if kind is K.SIZEOF:
            self.advance()
            opener = self.expect(K.LPAREN, "after sizeof")
            args = self.parse_argument_list(opener)
            return ast.SizeOf(args, span=self.span_from(tok))
        if kind is K.MEASURE:
            self.advance()
            target = self.parse_unary_or_primary()
            return ast.MeasureExpr(target, span=self.span_from(tok))
        if kind is K.LBRACE:
            return ast.ArrayLiteral(self._parse_brace_list(), span=self.span_from(tok))
        raise self.error(f"expected expression, found {self._describe(tok)}")

    def parse_cast(self, target: ast.TypeSpec, start: Token) -> ast.Expression:
        """Parse ``(operand)`` following a type specifier in expression position."""
        if not self.at(K.LPAREN):
            raise self.error(f"expected '(' after cast type, found {self._describe(self.current)}")
        opener = self.advance()
        operand = self.parse_expression()
        self.close(K.RPAREN, opener)
        return self.parse_postfix(ast.Cast(target, operand, span=self.span_from(start)))

    def _parse_brace_list(self) -> tuple[ast.Expression, ...]:
        opener = self.expect(K.LBRACE)
        items = []
        if not self.at(K.RBRACE):
            while True:
                items.append(self.parse_expression())
                if not self.accept(K.COMMA):
                    break
                if self.at(K.RBRACE):
                    raise self.error("trailing comma", self.previous.span)
        self.close(K.RBRACE, opener)
        return tuple(items)

    def parse_postfix(self, base: ast.Expression) -> ast.Expression:
        while True:
            if self.at(K.LBRACKET):
                opener = self.advance()
                if self.at(K.RBRACKET):
                    raise self.error("empty index", opener.span.merge(self.current.span))
                indices = [self.parse_index_entry()]
                while self.accept(K.COMMA):
                    indices.append(self.parse_index_entry())
                self.close(K.RBRACKET, opener)
                base = ast.Index(base, tuple(indices), span=self.span_from(base.span))
            elif self.at(K.LPAREN):
                if not isinstance(base, ast.Identifier):
                    raise self.error("only a named function can be called", self.current.span)
                opener = self.advance()
                args = self.parse_argument_list(opener)
                base = ast.Call(base.name, args, span=self.span_from(base.span))
            else:
                return base

    def parse_index_entry(self) -> ast.Expression:
        if self.at(K.LBRACE):
            start = self.current
            return ast.SetLiteral(self._parse_brace_list(), span=self.span_from(start))
        return self.parse_range_or_expression((K.RBRACKET, K.COMMA))

    def parse_range_or_expression(self, stops=(K.RBRACKET,)) -> ast.Expression:
        """``expr`` or a range ``[start]:[end]`` / ``[start]:[step]:[end]``."""
        start_tok = self.current
        start = None if self.at(K.COLON) else self.parse_expression()
        if not self.at(K.COLON):
            return start
        self.advance()
        middle = None if self.at(K.COLON, *stops) else self.parse_expression()
        if self.accept(K.COLON):
            end = None if self.at(*stops) else self.parse_expression()
            return ast.Range(start, middle, end, span=self.span_from(start_tok))
        return ast.Range(start, None, middle, span=self.span_from(start_tok))

    def parse_argument_list(self, opener: Token) -> tuple[ast.Expression, ...]:
        """Comma-separated expressions up to the ``)`` matching ``opener``."""
        args = []
        if self.accept(K.RPAREN):
            return ()
        while True:
            if self.at(K.EOF):
                raise self.error(f"unclosed '{opener.lexeme}'", opener.span)
            args.append(self.parse_expression())
            if self.accept(K.COMMA):
                if self.at(K.RPAREN):
                    raise self.error("trailing comma", self.previous.span)
                continue
            self.close(K.RPAREN, opener)
            return tuple(args)

    # -- types -------------------------------------------------------------

    def parse_designator(self) -> ast.Expression:
        opener = self.expect(K.LBRACKET)
        value = self.parse_expression()
        self.close(K.RBRACKET, opener)
        return value

    def _optional_designator(self) -> ast.Expression | None:
        return self.parse_designator() if self.at(K.LBRACKET) else None

    def parse_type_specifier(self) -> ast.TypeSpec:
        tok = self.advance()
        kind = tok.kind
        if kind in _WIDTH_TYPES:
            width = self._optional_designator()
            return _WIDTH_TYPES[kind](width, span=self.span_from(tok))
        if kind in _PLAIN_TYPES:
            return _PLAIN_TYPES[kind](span=self.span_from(tok))
        if kind is K.COMPLEX:
            base = None
            if self.at(K.LBRACKET):
                opener = self.advance()
                inner = self.current
                if inner.kind is not K.FLOAT:
                    raise self.error("complex component type must be float", inner.span)
                base = self.parse_type_specifier()
                self.close(K.RBRACKET, opener)
            return ast.ComplexType(base, span=self.span_from(tok))
        if kind is K.QUBIT:
            size = self._optional_designator()
            return ast.QubitType(size, span=self.span_from(tok))
        if kind is K.ARRAY:
            opener = self.expect(K.LBRACKET, "after array")
            if not self.at(*SCALAR_TYPE_KINDS):
                raise self.error("array element type must be a classical scalar type")
            element = self.parse_type_specifier()
            dims = []
            while self.accept(K.COMMA):
                dims.append(self.parse_expression())
            if not dims:
                raise self.error("array type requires at least one dimension")
            self.close(K.RBRACKET, opener)
            return ast.ArrayType(element, tuple(dims), span=self.span_from(tok))
        raise self.error(f"expected type, found {self._describe(tok)}", tok.span)

    # -- hooks -------------------------------------------------------------

    def parse_scope_block(self) -> ast.Body:
        """Braced statement block; needs the statement parser."""
        raise self.error("statement blocks are not valid here")


def parse_expression_text(text: str) -> tuple[ast.Expression | None, list[Diagnostic]]:
    """Parse a standalone expression; convenience for tools and tests."""
    from .lexer import tokenize

    tokens, diagnostics = tokenize(text)
    parser = ExpressionParser(tokens, text)
    try:
        expr = parser.parse_expression()
        if not parser.at(K.EOF):
            raise parser.error(f"unexpected {parser._describe(parser.current)} after expression")
    except ParseError as exc:
        return None, diagnostics + [exc.diagnostic]
    return expr, diagnostics
