"""Canonical OpenQASM text: one statement per line, 2-space indentation,
every unary and binary expression fully parenthesized.

Re-parsing the output yields a structurally equal program. Opaque
calibration bodies are emitted verbatim from their captured text.
"""

from __future__ import annotations

from .. import ast

INDENT = "  "


def _number(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def _join(items) -> str:
    return ", ".join(render_expression(e) for e in items)


def _opt(expr) -> str:
    return "" if expr is None else render_expression(expr)


def _designator(expr) -> str:
    return "" if expr is None else f"[{render_expression(expr)}]"


def render_expression(e: ast.Expression) -> str:
    if isinstance(e, ast.IntegerLit):
        return str(e.value)
    if isinstance(e, ast.FloatLit):
        return repr(e.value)
    if isinstance(e, ast.ImaginaryLit):
        return f"{_number(e.value)}im"
    if isinstance(e, ast.BooleanLit):
        return "true" if e.value else "false"
    if isinstance(e, ast.BitstringLit):
        return f'"{e.bits}"'
    if isinstance(e, ast.TimingLit):
        return f"{_number(e.value)}{e.unit}"
    if isinstance(e, ast.Identifier):
        return e.name
    if isinstance(e, ast.HardwareQubit):
        return f"${e.index}"
    if isinstance(e, ast.Unary):
        return f"({e.op}{render_expression(e.operand)})"
    if isinstance(e, ast.Binary):
        return f"({render_expression(e.left)} {e.op} {render_expression(e.right)})"
    if isinstance(e, ast.Index):
        return f"{render_expression(e.base)}[{_join(e.indices)}]"
    if isinstance(e, ast.Range):
        if e.step is None:
            return f"{_opt(e.start)}:{_opt(e.end)}"
        return f"{_opt(e.start)}:{_opt(e.step)}:{_opt(e.end)}"
    if isinstance(e, (ast.SetLiteral, ast.ArrayLiteral)):
        return "{" + _join(e.elements) + "}"
    if isinstance(e, ast.Call):
        return f"{e.name}({_join(e.args)})"
    if isinstance(e, ast.Cast):
        return f"{render_type(e.type)}({render_expression(e.operand)})"
    if isinstance(e, ast.DurationOf):
        inner = " ".join(line.strip() for s in e.body for line in render_statement(s, 0))
        return "durationof({" + inner + "})"
    if isinstance(e, ast.SizeOf):
        return f"sizeof({_join(e.args)})"
    if isinstance(e, ast.MeasureExpr):
        return f"measure {render_expression(e.target)}"
    if isinstance(e, ast.Concatenation):
        return " ++ ".join(render_expression(p) for p in e.parts)
    raise TypeError(f"cannot render expression {e.kind}")


_WIDTH_KEYWORDS = {
    ast.BitType: "bit", ast.IntType: "int", ast.UintType: "uint",
    ast.FloatType: "float", ast.AngleType: "angle",
}
_PLAIN_KEYWORDS = {ast.BoolType: "bool", ast.DurationType: "duration", ast.StretchType: "stretch"}


def render_type(t: ast.TypeSpec) -> str:
    cls = type(t)
    if cls in _WIDTH_KEYWORDS:
        return _WIDTH_KEYWORDS[cls] + _designator(t.width)
    if cls in _PLAIN_KEYWORDS:
        return _PLAIN_KEYWORDS[cls]
    if isinstance(t, ast.ComplexType):
        return "complex" if t.base is None else f"complex[{render_type(t.base)}]"
    if isinstance(t, ast.QubitType):
        return "qubit" + _designator(t.size)
    if isinstance(t, ast.ArrayType):
        return f"array[{render_type(t.element)}, {_join(t.dimensions)}]"
    raise TypeError(f"cannot render type {t.kind}")


def _modifier(m: ast.Modifier) -> str:
    if isinstance(m, ast.Inv):
        return "inv"
    if isinstance(m, ast.Pow):
        return f"pow({render_expression(m.exponent)})"
    word = "ctrl" if isinstance(m, ast.Ctrl) else "negctrl"
    return word if m.count is None else f"{word}({render_expression(m.count)})"


def _block(header: str, body, depth: int) -> list[str]:
    lines = [INDENT * depth + header + " {"]
    for stmt in body:
        lines.extend(render_statement(stmt, depth + 1))
    lines.append(INDENT * depth + "}")
    return lines


def _param(p: ast.Param) -> str:
    prefix = f"{p.access} " if p.access else ""
    return f"{prefix}{render_type(p.type)} {p.name}"


def render_statement(s: ast.Statement, depth: int = 0) -> list[str]:
    pad = INDENT * depth

    def line(text: str) -> list[str]:
        return [pad + text]

    if isinstance(s, ast.IncludeStmt):
        return line(f'include "{s.path}";')
    if isinstance(s, ast.QuantumDecl):
        if s.legacy:
            return line(f"qreg {s.name}{_designator(s.size)};")
        return line(f"qubit{_designator(s.size)} {s.name};")
    if isinstance(s, ast.ClassicalDecl):
        if s.legacy:
            return line(f"creg {s.name}{_designator(s.type.width)};")
        prefix = "const " if s.const else f"{s.io} " if s.io else ""
        init = "" if s.init is None else f" = {render_expression(s.init)}"
        return line(f"{prefix}{render_type(s.type)} {s.name}{init};")
    if isinstance(s, ast.AliasDecl):
        return line(f"let {s.name} = {render_expression(s.target)};")
    if isinstance(s, ast.GateDef):
        params = f"({', '.join(s.params)})" if s.params else ""
        return _block(f"gate {s.name}{params} {', '.join(s.qubits)}", s.body, depth)
    if isinstance(s, ast.GateCall):
        mods = "".join(_modifier(m) + " @ " for m in s.modifiers)
        args = f"({_join(s.args)})" if s.args else ""
        operands = f" {_join(s.qubits)}" if s.qubits else ""
        return line(f"{mods}{s.name}{args}{_designator(s.duration)}{operands};")
    if isinstance(s, ast.Measure):
        dest = "" if s.destination is None else f" -> {render_expression(s.destination)}"
        return line(f"measure {render_expression(s.target)}{dest};")
    if isinstance(s, ast.Reset):
        return line(f"reset {render_expression(s.target)};")
    if isinstance(s, ast.Barrier):
        return line("barrier" + (f" {_join(s.operands)}" if s.operands else "") + ";")
    if isinstance(s, ast.Delay):
        operands = f" {_join(s.operands)}" if s.operands else ""
        return line(f"delay{_designator(s.duration)}{operands};")
    if isinstance(s, ast.Box):
        return _block("box" + _designator(s.duration), s.body, depth)
    if isinstance(s, ast.SubroutineDef):
        ret = "" if s.return_type is None else f" -> {render_type(s.return_type)}"
        params = ", ".join(_param(p) for p in s.params)
        return _block(f"def {s.name}({params}){ret}", s.body, depth)
    if isinstance(s, ast.ExternDecl):
        ret = "" if s.return_type is None else f" -> {render_type(s.return_type)}"
        return line(f"extern {s.name}({', '.join(render_type(t) for t in s.param_types)}){ret};")
    if isinstance(s, ast.Return):
        return line("return;" if s.value is None else f"return {render_expression(s.value)};")
    if isinstance(s, ast.If):
        lines = _block(f"if ({render_expression(s.condition)})", s.then_body, depth)
        if s.else_body is not None:
            else_lines = _block("else", s.else_body, depth)
            lines[-1] = lines[-1] + " " + else_lines[0].lstrip()
            lines.extend(else_lines[1:])
        return lines
    if isinstance(s, ast.For):
        iterable = render_expression(s.iterable)
        if isinstance(s.iterable, ast.Range):
            iterable = f"[{iterable}]"
        return _block(f"for {render_type(s.var_type)} {s.var} in {iterable}", s.body, depth)
    if isinstance(s, ast.While):
        return _block(f"while ({render_expression(s.condition)})", s.body, depth)
    if isinstance(s, ast.Break):
        return line("break;")
    if isinstance(s, ast.Continue):
        return line("continue;")
    if isinstance(s, ast.End):
        return line("end;")
    if isinstance(s, ast.ExpressionStmt):
        return line(f"{render_expression(s.expr)};")
    if isinstance(s, ast.Assignment):
        return line(f"{render_expression(s.target)} {s.op} {render_expression(s.value)};")
    if isinstance(s, ast.Pragma):
        return line(f"pragma {s.text}".rstrip())
    if isinstance(s, ast.Annotation):
        return line(f"@{s.name} {s.text}".rstrip()) + render_statement(s.statement, depth)
    if isinstance(s, ast.CalGrammar):
        return line(f'defcalgrammar "{s.name}";')
    if isinstance(s, ast.CalBlock):
        return [pad + "cal {", s.raw, pad + "}"] if s.raw else line("cal {}")
    if isinstance(s, ast.DefcalBlock):
        head = f"defcal {s.signature} {{"
        return [pad + head, s.raw, pad + "}"] if s.raw else line(head + "}")
    raise TypeError(f"cannot render statement {s.kind}")


def render_canonical(program: ast.Program) -> str:
    """Render ``program`` as canonical OpenQASM 3 text, always with a version line."""
    major, minor = program.version or (3, 0)
    lines = [f"OPENQASM {major}.{minor};"]
    for stmt in program.statements:
        lines.extend(render_statement(stmt))
    return "\n".join(lines) + "\n"
