"""Recursive-descent statement parser producing a :class:`~qasm3front.ast.Program`.

Failures never escape: a malformed statement yields one diagnostic, the
parser skips to the next ``;`` or the ``}`` closing the construct it was
in, and carries on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast
from . import diagnostics as diag
from .diagnostics import Diagnostic
from .expr_parser import SCALAR_TYPE_KINDS, ExpressionParser, ParseError
from .lexer import tokenize
from .span import SourceSpan
from .tokens import ASSIGNMENT_OPERATORS, Token, TokenKind

K = TokenKind

STANDARD_INCLUDE = "stdgates.inc"

_MODIFIER_KINDS = (K.CTRL, K.NEGCTRL, K.INV, K.POW)
_OPERAND_START = (K.IDENTIFIER, K.HARDWARE_QUBIT)
_DECLARATIONS = (ast.ClassicalDecl, ast.QuantumDecl, ast.AliasDecl,
                 ast.GateDef, ast.SubroutineDef, ast.ExternDecl)


@dataclass
class ParseOutcome:
    program: ast.Program
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return not diag.has_errors(self.diagnostics)


def _is_qubit_operand(expr: ast.Expression) -> bool:
    if isinstance(expr, ast.Index):
        return _is_qubit_operand(expr.base)
    return isinstance(expr, (ast.Identifier, ast.HardwareQubit))


def _is_lvalue(expr: ast.Expression) -> bool:
    if isinstance(expr, ast.Index):
        return _is_lvalue(expr.base)
    return isinstance(expr, ast.Identifier)


def _unwrap(stmt: ast.Statement) -> ast.Statement:
    while isinstance(stmt, ast.Annotation):
        stmt = stmt.statement
    return stmt


class Parser(ExpressionParser):

    # -- program -----------------------------------------------------------

    def parse_program(self) -> ParseOutcome:
        version = None
        if self.at(K.OPENQASM):
            try:
                version = self.parse_version_statement()
            except ParseError as exc:
                self.diagnostics.append(exc.diagnostic)
                self.synchronize(in_block=False)
        else:
            self.diagnostics.append(diag.warning(
                diag.NO_VERSION, "missing version statement; assuming OPENQASM 3.0",
                self.current.span))
        statements = []
        while not self.at(K.EOF):
            stmt = self._statement_or_recover(in_block=False)
            if stmt is not None:
                statements.append(stmt)
        end = self.tokens[-1].span
        span = SourceSpan(0, end.end_offset, 1, 1, end.end_line, end.end_col)
        return ParseOutcome(ast.Program(version, tuple(statements), span=span), self.diagnostics)

    def _statement_or_recover(self, in_block: bool) -> ast.Statement | None:
        try:
            return self.parse_statement()
        except ParseError as exc:
            self.diagnostics.append(exc.diagnostic)
            self.synchronize(in_block)
            return None

    def synchronize(self, in_block: bool) -> None:
        """Skip past the next ``;`` or the ``}`` balancing a brace opened here.

        Inside a block an unmatched ``}`` is left for the block to consume.
        """
        depth = 0
        while not self.at(K.EOF):
            kind = self.current.kind
            if kind is K.LBRACE:
                depth += 1
            elif kind is K.RBRACE:
                if depth == 0:
                    if not in_block:
                        self.advance()
                    return
                depth -= 1
                if depth == 0:
                    self.advance()
                    return
            elif kind is K.SEMICOLON and depth == 0:
                self.advance()
                return
            self.advance()

    def parse_version_statement(self) -> tuple[int, int]:
        self.expect(K.OPENQASM)
        tok = self.current
        if tok.kind not in (K.INTEGER_LITERAL, K.FLOAT_LITERAL):
            raise self.error("expected version number after OPENQASM")
        self.advance()
        major_text, _, minor_text = tok.lexeme.partition(".")
        if not major_text.isdigit() or (minor_text and not minor_text.isdigit()):
            raise self.error(f"malformed version number {tok.lexeme!r}", tok.span, diag.VERSION)
        version = (int(major_text), int(minor_text or 0))
        if version[0] != 3:
            self.diagnostics.append(diag.error(
                diag.VERSION, f"unsupported version {tok.lexeme}; only OpenQASM 3 is supported",
                tok.span))
        self.expect(K.SEMICOLON, "after version statement")
        return version

    # -- dispatch ----------------------------------------------------------

    def parse_statement(self) -> ast.Statement:
        tok = self.current
        kind = tok.kind
        handler = self._DISPATCH.get(kind)
        if handler is not None:
            return handler(self)
        if kind in SCALAR_TYPE_KINDS or kind is K.ARRAY:
            return self.parse_classical_declaration()
        if kind in _MODIFIER_KINDS:
            return self.parse_gate_call()
        if kind is K.IDENTIFIER:
            return self._parse_identifier_statement()
        if kind is K.OPENQASM:
            raise self.error("version statement must be the first statement", tok.span, diag.VERSION)
        if kind is K.RBRACE:
            raise self.error("unmatched '}'")
        if kind is K.LBRACE:
            raise self.error("bare scope blocks are not supported", code=diag.UNSUPPORTED)
        return self._parse_expression_statement(tok)

    def _parse_identifier_statement(self) -> ast.Statement:
        tok = self.current
        nxt = self.peek().kind
        if tok.lexeme == "switch" and nxt is K.LPAREN:
            raise self.error("switch statements (OpenQASM 3.1) are not supported",
                             tok.span, diag.UNSUPPORTED)
        if nxt in _OPERAND_START:
            return self.parse_gate_call()
        if nxt is K.LPAREN:
            self.advance()
            opener = self.advance()
            args = self.parse_argument_list(opener)
            if self.at(*_OPERAND_START, K.LBRACKET) or (self.at(K.SEMICOLON) and tok.lexeme == "gphase"):
                return self._finish_gate_call(tok, (), tok.lexeme, args)
            call = ast.Call(tok.lexeme, args, span=self.span_from(tok))
            expr = self.parse_binary_rhs(self.parse_postfix(call))
            return self._finish_expression_statement(tok, expr)
        if nxt is K.LBRACKET:
            expr = self.parse_unary_or_primary()
            if (self.at(*_OPERAND_START) and isinstance(expr, ast.Index)
                    and isinstance(expr.base, ast.Identifier) and len(expr.indices) == 1
                    and not isinstance(expr.indices[0], (ast.Range, ast.SetLiteral))):
                # `name[duration] operands;` is a gate call with a duration
                return self._finish_gate_call(tok, (), tok.lexeme, (), expr.indices[0])
            return self._finish_expression_statement(tok, self.parse_binary_rhs(expr))
        return self._parse_expression_statement(tok)

    def _parse_expression_statement(self, start: Token) -> ast.Statement:
        return self._finish_expression_statement(start, self.parse_expression())

    def _finish_expression_statement(self, start: Token, expr: ast.Expression) -> ast.Statement:
        if self.current.kind in ASSIGNMENT_OPERATORS:
            if not _is_lvalue(expr):
                raise self.error("left side of assignment must be a variable or indexed variable",
                                 expr.span)
            op = self.advance().lexeme
            value = self.parse_expression()
            self.expect(K.SEMICOLON, "after assignment")
            return ast.Assignment(expr, op, value, span=self.span_from(start))
        self.expect(K.SEMICOLON, "after expression")
        return ast.ExpressionStmt(expr, span=self.span_from(start))

    # -- blocks ------------------------------------------------------------

    def parse_scope_block(self) -> ast.Body:
        opener = self.expect(K.LBRACE)
        body = []
        while not self.at(K.RBRACE):
            if self.at(K.EOF):
                raise self.error("unclosed '{'", opener.span)
            stmt = self._statement_or_recover(in_block=True)
            if stmt is not None:
                body.append(stmt)
        self.advance()
        return tuple(body)

    def parse_body(self) -> ast.Body:
        """A braced block or a single statement."""
        if self.at(K.LBRACE):
            return self.parse_scope_block()
        return (self.parse_statement(),)

    def _restricted_block(self, allowed, message: str) -> ast.Body:
        body = []
        for stmt in self.parse_scope_block():
            if isinstance(_unwrap(stmt), allowed):
                body.append(stmt)
            else:
                self.diagnostics.append(diag.error(diag.SYNTAX, message, stmt.span))
        return tuple(body)

    # -- declarations ------------------------------------------------------

    def parse_include_statement(self) -> ast.Statement:
        start = self.advance()
        path_tok = self.current
        if path_tok.kind is not K.STRING_LITERAL:
            raise self.error("include expects a quoted file name")
        self.advance()
        self.expect(K.SEMICOLON, "after include")
        if path_tok.value != STANDARD_INCLUDE:
            self.diagnostics.append(diag.warning(
                diag.UNRESOLVED_INCLUDE, f"unresolved include {path_tok.value!r}", path_tok.span))
        return ast.IncludeStmt(path_tok.value, span=self.span_from(start))

    def parse_quantum_declaration(self) -> ast.Statement:
        start = self.advance()
        if start.kind is K.QREG:
            name = self.expect(K.IDENTIFIER, "in qreg declaration").lexeme
            size = self.parse_designator() if self.at(K.LBRACKET) else None
            legacy = True
        else:
            size = self.parse_designator() if self.at(K.LBRACKET) else None
            name = self.expect(K.IDENTIFIER, "in qubit declaration").lexeme
            legacy = False
        if self.at(K.ASSIGN):
            raise self.error("qubits cannot be initialized")
        self.expect(K.SEMICOLON, "after qubit declaration")
        return ast.QuantumDecl(name, size, legacy, span=self.span_from(start))

    def parse_classical_declaration(self) -> ast.Statement:
        start = self.current
        if start.kind is K.CREG:
            self.advance()
            name_tok = self.expect(K.IDENTIFIER, "in creg declaration")
            width = self.parse_designator() if self.at(K.LBRACKET) else None
            type_spec = ast.BitType(width, span=self.span_from(name_tok))
            self.expect(K.SEMICOLON, "after creg declaration")
            return ast.ClassicalDecl(type_spec, name_tok.lexeme, legacy=True,
                                     span=self.span_from(start))

        const = io = None
        if self.at(K.CONST):
            const = self.advance()
        elif self.at(K.INPUT, K.OUTPUT):
            io = self.advance()
        if not (self.at(*SCALAR_TYPE_KINDS) or self.at(K.ARRAY)):
            raise self.error(f"expected type, found {self._describe(self.current)}")
        type_tok = self.current
        type_spec = self.parse_type_specifier()
        if const is None and io is None and self.at(K.LPAREN):
            expr = self.parse_binary_rhs(self.parse_cast(type_spec, type_tok))
            return self._finish_expression_statement(start, expr)
        name = self.expect(K.IDENTIFIER, "in declaration").lexeme
        init = None
        if self.at(K.ASSIGN):
            if io is not None:
                raise self.error(f"{io.lexeme} declaration cannot have initializer")
            self.advance()
            init = self.parse_expression()
        elif const is not None:
            raise self.error("const declaration requires an initializer")
        self.expect(K.SEMICOLON, "after declaration")
        return ast.ClassicalDecl(type_spec, name, init, const is not None,
                                 io.lexeme if io else None, span=self.span_from(start))

    def parse_alias_statement(self) -> ast.Statement:
        start = self.advance()
        name = self.expect(K.IDENTIFIER, "after let").lexeme
        self.expect(K.ASSIGN, "in alias declaration")
        parts = [self.parse_expression()]
        while self.accept(K.DOUBLE_PLUS):
            parts.append(self.parse_expression())
        if len(parts) == 1:
            target = parts[0]
        else:
            target = ast.Concatenation(tuple(parts), span=parts[0].span.merge(parts[-1].span))
        self.expect(K.SEMICOLON, "after alias declaration")
        return ast.AliasDecl(name, target, span=self.span_from(start))

    def _identifier_list(self, context: str) -> list[Token]:
        names = [self.expect(K.IDENTIFIER, context)]
        while self.accept(K.COMMA):
            names.append(self.expect(K.IDENTIFIER, context))
        return names

    def parse_gate_definition(self) -> ast.Statement:
        start = self.advance()
        name = self.expect(K.IDENTIFIER, "after gate").lexeme
        params: list[Token] = []
        if self.at(K.LPAREN):
            opener = self.advance()
            if not self.at(K.RPAREN):
                params = self._identifier_list("in gate parameter list")
            self.close(K.RPAREN, opener)
        qubits = self._identifier_list("in gate qubit list")
        seen: set[str] = set()
        for tok in params + qubits:
            if tok.lexeme in seen:
                self.diagnostics.append(diag.error(
                    diag.SYNTAX, f"duplicate name {tok.lexeme!r} in gate signature", tok.span))
            seen.add(tok.lexeme)
        if not self.at(K.LBRACE):
            raise self.error("expected '{' to open gate body")
        body = self._restricted_block(ast.GATE_BODY_STATEMENTS, "only quantum statements in gate body")
        return ast.GateDef(name, tuple(t.lexeme for t in params), tuple(t.lexeme for t in qubits),
                           body, span=self.span_from(start))

    def _parse_param(self) -> ast.Param:
        start = self.current
        access = None
        if self.at(K.IDENTIFIER) and start.lexeme in ("readonly", "mutable") and self.peek().kind is K.ARRAY:
            access = self.advance().lexeme
        if self.at(K.IDENTIFIER):
            raise self.error(f"parameter {self.current.lexeme!r} requires type")
        if self.at(K.QREG, K.CREG):
            legacy = self.advance()
            name_tok = self.expect(K.IDENTIFIER, "in parameter")
            size = self.parse_designator() if self.at(K.LBRACKET) else None
            cls = ast.QubitType if legacy.kind is K.QREG else ast.BitType
            return ast.Param(cls(size, span=self.span_from(legacy)), name_tok.lexeme,
                             span=self.span_from(start))
        if not (self.at(*SCALAR_TYPE_KINDS) or self.at(K.ARRAY, K.QUBIT)):
            raise self.error(f"expected parameter type, found {self._describe(self.current)}")
        type_spec = self.parse_type_specifier()
        name = self.expect(K.IDENTIFIER, "in parameter").lexeme
        return ast.Param(type_spec, name, access, span=self.span_from(start))

    def _parse_return_type(self) -> ast.TypeSpec | None:
        if not self.accept(K.ARROW):
            return None
        if not self.at(*SCALAR_TYPE_KINDS):
            raise self.error("expected classical return type after '->'")
        return self.parse_type_specifier()

    def parse_subroutine_definition(self) -> ast.Statement:
        start = self.advance()
        name = self.expect(K.IDENTIFIER, "after def").lexeme
        opener = self.expect(K.LPAREN, "after subroutine name")
        params = []
        if not self.at(K.RPAREN):
            params.append(self._parse_param())
            while self.accept(K.COMMA):
                params.append(self._parse_param())
        self.close(K.RPAREN, opener)
        return_type = self._parse_return_type()
        body = self.parse_scope_block()
        return ast.SubroutineDef(name, tuple(params), return_type, body, span=self.span_from(start))

    def parse_extern_declaration(self) -> ast.Statement:
        start = self.advance()
        name = self.expect(K.IDENTIFIER, "after extern").lexeme
        opener = self.expect(K.LPAREN, "after extern name")
        types = []
        if not self.at(K.RPAREN):
            while True:
                if not (self.at(*SCALAR_TYPE_KINDS) or self.at(K.ARRAY)):
                    raise self.error("expected classical type in extern signature")
                types.append(self.parse_type_specifier())
                if not self.accept(K.COMMA):
                    break
        self.close(K.RPAREN, opener)
        return_type = self._parse_return_type()
        self.expect(K.SEMICOLON, "after extern declaration")
        return ast.ExternDecl(name, tuple(types), return_type, span=self.span_from(start))

    # -- quantum operations ------------------------------------------------

    def parse_gate_call(self) -> ast.Statement:
        start = self.current
        modifiers = []
        while self.at(*_MODIFIER_KINDS):
            mod_tok = self.advance()
            if mod_tok.kind is K.INV:
                mod = ast.Inv(span=mod_tok.span)
            elif mod_tok.kind is K.POW:
                if not self.at(K.LPAREN):
                    raise self.error("pow modifier requires a parenthesized exponent", mod_tok.span)
                opener = self.advance()
                exponent = self.parse_expression()
                self.close(K.RPAREN, opener)
                mod = ast.Pow(exponent, span=self.span_from(mod_tok))
            else:
                count = None
                if self.at(K.LPAREN):
                    opener = self.advance()
                    count = self.parse_expression()
                    self.close(K.RPAREN, opener)
                cls = ast.Ctrl if mod_tok.kind is K.CTRL else ast.NegCtrl
                mod = cls(count, span=self.span_from(mod_tok))
            modifiers.append(mod)
            self.expect(K.AT, "after gate modifier")
        if not self.at(K.IDENTIFIER):
            raise self.error(f"expected gate name, found {self._describe(self.current)}")
        name = self.advance().lexeme
        args: tuple[ast.Expression, ...] = ()
        if self.at(K.LPAREN):
            args = self.parse_argument_list(self.advance())
        return self._finish_gate_call(start, tuple(modifiers), name, args)

    def _finish_gate_call(self, start: Token, modifiers, name: str, args,
                          duration: ast.Expression | None = None) -> ast.Statement:
        if duration is None and self.at(K.LBRACKET):
            duration = self.parse_designator()
        qubits = []
        if not self.at(K.SEMICOLON):
            qubits.append(self._parse_qubit_operand())
            while self.accept(K.COMMA):
                qubits.append(self._parse_qubit_operand())
        self.expect(K.SEMICOLON, "after gate call")
        return ast.GateCall(modifiers, name, args, duration, tuple(qubits), span=self.span_from(start))

    def _parse_qubit_operand(self) -> ast.Expression:
        expr = self.parse_unary_or_primary()
        if not _is_qubit_operand(expr):
            raise self.error("expected qubit operand", expr.span)
        return expr

    def _parse_operand_list(self) -> tuple[ast.Expression, ...]:
        operands = []
        if not self.at(K.SEMICOLON):
            operands.append(self._parse_qubit_operand())
            while self.accept(K.COMMA):
                operands.append(self._parse_qubit_operand())
        return tuple(operands)

    def parse_measurement(self) -> ast.Statement:
        start = self.advance()
        target = self._parse_qubit_operand()
        destination = None
        if self.accept(K.ARROW):
            destination = self.parse_unary_or_primary()
            if not _is_lvalue(destination):
                raise self.error("measurement destination must be a classical variable",
                                 destination.span)
        self.expect(K.SEMICOLON, "after measurement")
        return ast.Measure(target, destination, span=self.span_from(start))

    def parse_timing_statement(self) -> ast.Statement:
        start = self.advance()
        kind = start.kind
        if kind is K.RESET:
            target = self._parse_qubit_operand()
            self.expect(K.SEMICOLON, "after reset")
            return ast.Reset(target, span=self.span_from(start))
        if kind is K.BARRIER:
            operands = self._parse_operand_list()
            self.expect(K.SEMICOLON, "after barrier")
            return ast.Barrier(operands, span=self.span_from(start))
        if kind is K.DELAY:
            if not self.at(K.LBRACKET):
                raise self.error("delay requires a duration designator")
            duration = self.parse_designator()
            operands = self._parse_operand_list()
            self.expect(K.SEMICOLON, "after delay")
            return ast.Delay(duration, operands, span=self.span_from(start))
        duration = self.parse_designator() if self.at(K.LBRACKET) else None
        if not self.at(K.LBRACE):
            raise self.error("expected '{' to open box body")
        allowed = tuple(c for c in ast.NODE_TYPES.values()
                        if issubclass(c, ast.Statement) and c not in _DECLARATIONS)
        body = self._restricted_block(allowed, "declarations are not allowed in box body")
        return ast.Box(duration, body, span=self.span_from(start))

    # -- control flow ------------------------------------------------------

    def _parenthesized_condition(self, keyword: str) -> ast.Expression:
        if not self.at(K.LPAREN):
            raise self.error(f"expected '(' after {keyword}")
        opener = self.advance()
        condition = self.parse_expression()
        self.close(K.RPAREN, opener)
        return condition

    def parse_control_flow(self) -> ast.Statement:
        start = self.advance()
        kind = start.kind
        if kind is K.IF:
            condition = self._parenthesized_condition("if")
            then_body = self.parse_body()
            else_body = self.parse_body() if self.accept(K.ELSE) else None
            return ast.If(condition, then_body, else_body, span=self.span_from(start))
        if kind is K.WHILE:
            condition = self._parenthesized_condition("while")
            body = self.parse_body()
            return ast.While(condition, body, span=self.span_from(start))
        if kind is K.FOR:
            if self.at(K.IDENTIFIER) and self.peek().kind is K.IN:
                raise self.error("for loop variable requires a type")
            if not self.at(*SCALAR_TYPE_KINDS):
                raise self.error("expected loop variable type after for")
            var_type = self.parse_type_specifier()
            var = self.expect(K.IDENTIFIER, "as loop variable").lexeme
            self.expect(K.IN, "in for loop")
            if self.at(K.LBRACKET):
                opener = self.advance()
                iterable = self.parse_range_or_expression()
                if not isinstance(iterable, ast.Range):
                    raise self.error("expected range in for loop", iterable.span)
                self.close(K.RBRACKET, opener)
                iterable = ast.Range(iterable.start, iterable.step, iterable.end,
                                     span=self.span_from(opener))
            elif self.at(K.LBRACE):
                opener = self.current
                iterable = ast.SetLiteral(self._parse_brace_list(), span=self.span_from(opener))
            else:
                iterable = self.parse_expression()
            body = self.parse_body()
            return ast.For(var_type, var, iterable, body, span=self.span_from(start))
        if kind is K.RETURN:
            value = None if self.at(K.SEMICOLON) else self.parse_expression()
            self.expect(K.SEMICOLON, "after return")
            return ast.Return(value, span=self.span_from(start))
        self.expect(K.SEMICOLON, f"after {start.lexeme}")
        cls = {K.BREAK: ast.Break, K.CONTINUE: ast.Continue, K.END: ast.End}[kind]
        return cls(span=self.span_from(start))

    # -- raw-text constructs -----------------------------------------------

    def _raw_text(self, start_offset: int, end_offset: int, tokens: list[Token]) -> str:
        if self.source is not None:
            return self.source[start_offset:end_offset].strip()
        return " ".join(t.lexeme for t in tokens)

    def _rest_of_line(self, marker: Token) -> str:
        line = marker.span.end_line
        consumed = []
        while not self.at(K.EOF) and self.current.span.start_line == line:
            consumed.append(self.advance())
        end = consumed[-1].span.end_offset if consumed else marker.span.end_offset
        return self._raw_text(marker.span.end_offset, end, consumed)

    def parse_pragma(self) -> ast.Statement:
        start = self.advance()
        text = self._rest_of_line(start)
        return ast.Pragma(text, span=self.span_from(start))

    def parse_annotation(self) -> ast.Statement:
        start = self.advance()
        text = self._rest_of_line(start)
        if self.at(K.EOF):
            raise self.error("annotation must precede a statement", start.span)
        stmt = self.parse_statement()
        return ast.Annotation(start.lexeme[1:], text, stmt, span=self.span_from(start))

    def _balanced_body(self) -> str:
        opener = self.expect(K.LBRACE)
        depth = 1
        inner: list[Token] = []
        while depth:
            tok = self.current
            if tok.kind is K.EOF:
                raise self.error("unclosed '{'", opener.span)
            self.advance()
            if tok.kind is K.LBRACE:
                depth += 1
            elif tok.kind is K.RBRACE:
                depth -= 1
                if depth == 0:
                    break
            inner.append(tok)
        return self._raw_text(opener.span.end_offset, self.previous.span.start_offset, inner)

    def parse_opaque_cal_block(self) -> ast.Statement:
        start = self.advance()
        if start.kind is K.DEFCALGRAMMAR:
            if not self.at(K.STRING_LITERAL):
                raise self.error("defcalgrammar expects a quoted grammar name")
            name = self.advance().value
            self.expect(K.SEMICOLON, "after defcalgrammar")
            return ast.CalGrammar(name, span=self.span_from(start))
        if start.kind is K.CAL:
            if not self.at(K.LBRACE):
                raise self.error("expected '{' after cal")
            return ast.CalBlock(self._balanced_body(), span=self.span_from(start))
        signature: list[Token] = []
        while not self.at(K.LBRACE):
            if self.at(K.EOF, K.SEMICOLON):
                raise self.error("expected '{' to open defcal body")
            signature.append(self.advance())
        if not signature:
            raise self.error("defcal requires a signature")
        sig = self._raw_text(signature[0].span.start_offset, signature[-1].span.end_offset, signature)
        raw = self._balanced_body()
        return ast.DefcalBlock(sig, raw, span=self.span_from(start))

    _DISPATCH = {
        K.INCLUDE: parse_include_statement,
        K.QUBIT: parse_quantum_declaration,
        K.QREG: parse_quantum_declaration,
        K.CREG: parse_classical_declaration,
        K.CONST: parse_classical_declaration,
        K.INPUT: parse_classical_declaration,
        K.OUTPUT: parse_classical_declaration,
        K.LET: parse_alias_statement,
        K.GATE: parse_gate_definition,
        K.DEF: parse_subroutine_definition,
        K.EXTERN: parse_extern_declaration,
        K.MEASURE: parse_measurement,
        K.RESET: parse_timing_statement,
        K.BARRIER: parse_timing_statement,
        K.DELAY: parse_timing_statement,
        K.BOX: parse_timing_statement,
        K.IF: parse_control_flow,
        K.FOR: parse_control_flow,
        K.WHILE: parse_control_flow,
        K.RETURN: parse_control_flow,
        K.BREAK: parse_control_flow,
        K.CONTINUE: parse_control_flow,
        K.END: parse_control_flow,
        K.PRAGMA: parse_pragma,
        K.ANNOTATION: parse_annotation,
        K.CAL: parse_opaque_cal_block,
        K.DEFCAL: parse_opaque_cal_block,
        K.DEFCALGRAMMAR: parse_opaque_cal_block,
    }


def parse_program(tokens: list[Token], source: str | None = None) -> ParseOutcome:
    """Parse a token stream; ``source`` lets raw-text constructs keep exact spelling."""
    return Parser(tokens, source).parse_program()


def parse(source: str) -> ParseOutcome:
    """Tokenize and parse ``source``; lexer diagnostics come first."""
    tokens, lex_diagnostics = tokenize(source)
    outcome = parse_program(tokens, source)
    outcome.diagnostics[:0] = lex_diagnostics
    return outcome
