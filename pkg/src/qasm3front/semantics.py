"""Post-parse checks: gate registry, scoped symbol tables, declaration typing.

The pass is deliberately shallow. Types are inferred for literals and
declared symbols only, and modifier counts or widths are checked only when
they are integer literals. Anything that would need constant evaluation
is accepted silently.
"""

from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional

from . import ast
from . import diagnostics as diag
from .diagnostics import Diagnostic
from .span import SourceSpan
from .stmt_parser import STANDARD_INCLUDE


@dataclass(frozen=True)
class GateSignature:
    param_count: int
    qubit_count: int


# transcribed from stdgates.inc as distributed with the OpenQASM 3 grammar
STANDARD_GATES: dict[str, GateSignature] = {
    name: GateSignature(params, qubits) for name, params, qubits in [
        ("p", 1, 1), ("x", 0, 1), ("y", 0, 1), ("z", 0, 1), ("h", 0, 1),
        ("s", 0, 1), ("sdg", 0, 1), ("t", 0, 1), ("tdg", 0, 1), ("sx", 0, 1),
        ("rx", 1, 1), ("ry", 1, 1), ("rz", 1, 1),
        ("cx", 0, 2), ("cy", 0, 2), ("cz", 0, 2), ("cp", 1, 2),
        ("crx", 1, 2), ("cry", 1, 2), ("crz", 1, 2), ("ch", 0, 2),
        ("swap", 0, 2), ("ccx", 0, 3), ("cswap", 0, 3), ("cu", 4, 2),
        # OpenQASM 2 compatibility names
        ("CX", 0, 2), ("phase", 1, 1), ("cphase", 1, 2), ("id", 0, 1),
        ("u1", 1, 1), ("u2", 2, 1), ("u3", 3, 1),
    ]
}
BUILTIN_GATES: dict[str, GateSignature] = {
    "U": GateSignature(3, 1),
    "gphase": GateSignature(1, 0),
}
BUILTIN_CONSTANTS = frozenset({"pi", "π", "tau", "τ", "euler", "ℇ"})
BUILTIN_FUNCTIONS = frozenset({
    "arccos", "arcsin", "arctan", "ceiling", "cos", "exp", "floor", "log", "ln",
    "mod", "popcount", "pow", "rotl", "rotr", "sin", "sqrt", "tan", "real", "imag",
})


class GateRegistry:
    """Tracks the ``gates``, ``standard_gates`` and ``custom_gates`` sets."""

    def __init__(self) -> None:
        self.standard_gates: set[str] = set()
        self.custom_gates: set[str] = set()
        self.signatures: dict[str, GateSignature] = dict(BUILTIN_GATES)

    @property
    def gates(self) -> frozenset[str]:
        return frozenset(self.standard_gates | self.custom_gates | BUILTIN_GATES.keys())

    def resolve(self, name: str) -> Optional[tuple[str, GateSignature]]:
        """``(origin, signature)`` with origin builtin/standard/custom, or None."""
        if name in BUILTIN_GATES:
            return "builtin", BUILTIN_GATES[name]
        if name in self.standard_gates:
            return "standard", self.signatures[name]
        if name in self.custom_gates:
            return "custom", self.signatures[name]
        return None


def register_standard_gates(registry: GateRegistry) -> None:
    registry.standard_gates.update(STANDARD_GATES)
    registry.signatures.update(STANDARD_GATES)


class SymbolKind(str, enum.Enum):
    QUBIT_REGISTER = "qubit-register"
    CLASSICAL_VARIABLE = "classical-variable"
    ALIAS = "alias"
    SUBROUTINE = "subroutine"
    LOOP_VARIABLE = "loop-variable"
    GATE_PARAMETER = "gate-parameter"
    GATE_QUBIT = "gate-qubit"


_QUBIT_KINDS = (SymbolKind.QUBIT_REGISTER, SymbolKind.GATE_QUBIT)


@dataclass(frozen=True)
class SymbolInfo:
    kind: SymbolKind
    type: Optional[ast.TypeSpec]
    const: bool
    span: SourceSpan

    @property
    def is_qubit(self) -> bool:
        return self.kind in _QUBIT_KINDS or (
            self.kind is SymbolKind.ALIAS and isinstance(self.type, ast.QubitType))


class SymbolTable:
    def __init__(self) -> None:
        self.scopes: list[dict[str, SymbolInfo]] = [{}]

    @contextmanager
    def scope(self) -> Iterator[None]:
        self.scopes.append({})
        try:
            yield
        finally:
            self.scopes.pop()

    def lookup(self, name: str) -> Optional[SymbolInfo]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declare(self, name: str, info: SymbolInfo) -> list[Diagnostic]:
        current = self.scopes[-1]
        prior = current.get(name)
        if prior is not None:
            return [diag.error(diag.REDECLARE, f"{name!r} is already declared in this scope",
                               info.span, [("previous declaration", prior.span)])]
        current[name] = info
        return []


def declare_symbol(table: SymbolTable, name: str, info: SymbolInfo, span: SourceSpan) -> list[Diagnostic]:
    return table.declare(name, SymbolInfo(info.kind, info.type, info.const, span))


def define_gate(registry: GateRegistry, name: str, param_count: int, qubit_count: int,
                span: SourceSpan, table: SymbolTable | None = None) -> list[Diagnostic]:
    if name in registry.gates:
        return [diag.error(diag.GATE_REDEF, f"gate {name!r} is already defined", span)]
    if table is not None and table.lookup(name) is not None:
        return [diag.error(diag.NAME_CLASH, f"gate {name!r} collides with a declared symbol", span)]
    registry.custom_gates.add(name)
    registry.signatures[name] = GateSignature(param_count, qubit_count)
    return []


# -- typing ---------------------------------------------------------------------

_LITERALS = (ast.IntegerLit, ast.FloatLit, ast.ImaginaryLit, ast.BooleanLit,
             ast.BitstringLit, ast.TimingLit)


def infer_literal_type(expr: ast.Expression) -> ast.TypeSpec:
    span = expr.span
    if isinstance(expr, ast.IntegerLit):
        return ast.IntType(span=span)
    if isinstance(expr, ast.FloatLit):
        return ast.FloatType(span=span)
    if isinstance(expr, ast.BooleanLit):
        return ast.BoolType(span=span)
    if isinstance(expr, ast.BitstringLit):
        return ast.BitType(ast.IntegerLit(expr.width, span=span), span=span)
    if isinstance(expr, ast.TimingLit):
        return ast.DurationType(span=span)
    if isinstance(expr, ast.ImaginaryLit):
        return ast.ComplexType(span=span)
    raise TypeError(f"{expr.kind} is not a literal")


def _literal_width(spec: ast.TypeSpec, default: Optional[int]) -> Optional[int]:
    """Width of a sized type when written as an integer literal, else ``default``
    for an unsized type and None for a symbolic width."""
    width = getattr(spec, "width", None)
    if width is None:
        return default
    return width.value if isinstance(width, ast.IntegerLit) else None


def _strip_unary(expr: ast.Expression) -> ast.Expression:
    while isinstance(expr, ast.Unary):
        expr = expr.operand
    return expr


# declared type -> literal kinds it accepts
_ACCEPTS = {
    ast.IntegerLit: (ast.IntType, ast.UintType, ast.FloatType, ast.AngleType, ast.ComplexType, ast.BitType),
    ast.FloatLit: (ast.FloatType, ast.AngleType, ast.ComplexType),
    ast.BooleanLit: (ast.BoolType, ast.BitType),
    ast.BitstringLit: (ast.BitType, ast.IntType, ast.UintType),
    ast.TimingLit: (ast.DurationType, ast.StretchType),
    ast.ImaginaryLit: (ast.ComplexType,),
}
_TIMING_TYPES = (ast.DurationType, ast.StretchType)


def _type_name(spec: ast.TypeSpec) -> str:
    name = type(spec).__name__.removesuffix("Type").lower()
    width = _literal_width(spec, None)
    return f"{name}[{width}]" if width is not None else name


def _check_literal_init(declared: ast.TypeSpec, literal: ast.Expression, span) -> list[Diagnostic]:
    if not isinstance(declared, _ACCEPTS[type(literal)]):
        inferred = infer_literal_type(literal)
        return [diag.error(diag.TYPE_MISMATCH,
                           f"cannot initialize {_type_name(declared)} with {_type_name(inferred)} literal",
                           span)]
    if isinstance(literal, ast.BooleanLit) and isinstance(declared, ast.BitType):
        if _literal_width(declared, 1) not in (1, None):
            return [diag.error(diag.TYPE_MISMATCH,
                               f"cannot initialize {_type_name(declared)} with bool literal", span)]
    if isinstance(literal, ast.BitstringLit):
        default = 1 if isinstance(declared, ast.BitType) else None
        width = _literal_width(declared, default)
        if width is not None and width != literal.width:
            return [diag.error(diag.WIDTH_MISMATCH,
                               f"bitstring of width {literal.width} assigned to {_type_name(declared)}",
                               span)]
    return []


def _family(spec: ast.TypeSpec | None) -> Optional[str]:
    if spec is None or isinstance(spec, ast.ArrayType):
        return None
    if isinstance(spec, ast.QubitType):
        return "quantum"
    if isinstance(spec, _TIMING_TYPES):
        return "timing"
    return "numeric"


def check_declaration_init(decl: ast.ClassicalDecl, table: SymbolTable | None = None) -> list[Diagnostic]:
    """Check an initializer against the declared type.

    Literals are checked against the compatibility table; identifiers and
    casts only when both sides' types are known, by type family.
    """
    init = decl.init
    if init is None or isinstance(decl.type, ast.ArrayType):
        return []
    core = _strip_unary(init)
    if isinstance(core, _LITERALS):
        return _check_literal_init(decl.type, core, init.span)
    source_type = None
    if isinstance(core, ast.Cast):
        source_type = core.type
    elif isinstance(core, ast.Identifier) and table is not None:
        info = table.lookup(core.name)
        if info is not None:
            source_type = info.type
    target_family, source_family = _family(decl.type), _family(source_type)
    if target_family and source_family and target_family != source_family:
        return [diag.error(diag.TYPE_MISMATCH,
                           f"cannot initialize {_type_name(decl.type)} from {_type_name(source_type)}",
                           init.span)]
    return []


# -- gate calls -----------------------------------------------------------------


def _operand_name(expr: ast.Expression) -> Optional[str]:
    while isinstance(expr, ast.Index):
        expr = expr.base
    return expr.name if isinstance(expr, ast.Identifier) else None


def _added_controls(modifiers) -> Optional[int]:
    total = 0
    for mod in modifiers:
        if isinstance(mod, (ast.Ctrl, ast.NegCtrl)):
            if mod.count is None:
                total += 1
            elif isinstance(mod.count, ast.IntegerLit):
                total += mod.count.value
            else:
                return None
    return total


def check_qubit_operand(table: SymbolTable, operand: ast.Expression) -> list[Diagnostic]:
    if isinstance(operand, ast.HardwareQubit):
        return []
    name = _operand_name(operand)
    info = table.lookup(name) if name is not None else None
    if info is None or not info.is_qubit:
        shown = name if name is not None else operand.kind
        return [diag.error(diag.UNDEF_QUBIT, f"{shown!r} is not a declared qubit", operand.span)]
    return []


def resolve_gate_call(registry: GateRegistry, table: SymbolTable, call: ast.GateCall) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    resolved = registry.resolve(call.name)
    if resolved is None:
        out.append(diag.error(diag.UNDEF_GATE, f"undefined gate {call.name!r}", call.span))
    else:
        sig = resolved[1]
        if len(call.args) != sig.param_count:
            out.append(diag.error(
                diag.PARAM_ARITY,
                f"gate {call.name!r} takes {sig.param_count} parameter(s), got {len(call.args)}",
                call.span))
        controls = _added_controls(call.modifiers)
        if controls is not None and len(call.qubits) != sig.qubit_count + controls:
            out.append(diag.error(
                diag.QUBIT_ARITY,
                f"gate {call.name!r} needs {sig.qubit_count + controls} qubit operand(s), "
                f"got {len(call.qubits)}",
                call.span))
    for operand in call.qubits:
        out.extend(check_qubit_operand(table, operand))
    for i, operand in enumerate(call.qubits):
        if any(ast.structural_equal(operand, earlier) for earlier in call.qubits[:i]):
            out.append(diag.error(diag.DUP_QUBIT, "qubit operand used more than once", operand.span))
    return out


# -- the pass -------------------------------------------------------------------


class Analyzer:
    def __init__(self) -> None:
        self.registry = GateRegistry()
        self.table = SymbolTable()
        self.diagnostics: list[Diagnostic] = []

    def run(self, program: ast.Program) -> list[Diagnostic]:
        self.statements(program.statements)
        return self.diagnostics

    def statements(self, body) -> None:
        for stmt in body:
            self.statement(stmt)

    def scoped(self, body) -> None:
        with self.table.scope():
            self.statements(body)

    def report(self, diagnostics) -> None:
        self.diagnostics.extend(diagnostics)

    def declare(self, name, kind, type_spec, span, const=False) -> None:
        self.report(self.table.declare(name, SymbolInfo(kind, type_spec, const, span)))

    # statements

    def statement(self, stmt: ast.Statement) -> None:
        method = getattr(self, "stmt_" + type(stmt).__name__, None)
        if method is not None:
            method(stmt)

    def stmt_IncludeStmt(self, stmt):
        if stmt.path == STANDARD_INCLUDE:
            register_standard_gates(self.registry)

    def stmt_QuantumDecl(self, stmt):
        self.expr(stmt.size)
        self.declare(stmt.name, SymbolKind.QUBIT_REGISTER, ast.QubitType(stmt.size, span=stmt.span), stmt.span)

    def stmt_ClassicalDecl(self, stmt):
        self.type_spec(stmt.type)
        self.expr(stmt.init)
        self.report(check_declaration_init(stmt, self.table))
        if isinstance(stmt.init, ast.MeasureExpr):
            self.measure_widths(stmt.init.target, stmt.type, stmt.span)
        self.declare(stmt.name, SymbolKind.CLASSICAL_VARIABLE, stmt.type, stmt.span, stmt.const)

    def stmt_AliasDecl(self, stmt):
        self.expr(stmt.target)
        parts = stmt.target.parts if isinstance(stmt.target, ast.Concatenation) else (stmt.target,)
        infos = [self.table.lookup(n) for n in map(_operand_name, parts) if n is not None]
        if infos and all(i is not None and i.is_qubit for i in infos):
            alias_type = ast.QubitType(span=stmt.span)
        else:
            alias_type = infos[0].type if len(infos) == 1 and infos[0] is not None else None
        self.declare(stmt.name, SymbolKind.ALIAS, alias_type, stmt.span)

    def stmt_GateDef(self, stmt):
        outer = self.table
        self.table = SymbolTable()
        try:
            for p in stmt.params:
                self.table.declare(p, SymbolInfo(SymbolKind.GATE_PARAMETER, ast.AngleType(span=stmt.span),
                                                 False, stmt.span))
            for q in stmt.qubits:
                self.table.declare(q, SymbolInfo(SymbolKind.GATE_QUBIT, ast.QubitType(span=stmt.span),
                                                 False, stmt.span))
            self.statements(stmt.body)
        finally:
            self.table = outer
        self.report(define_gate(self.registry, stmt.name, len(stmt.params), len(stmt.qubits),
                                stmt.span, self.table))

    def _declare_callable(self, stmt, return_type):
        if stmt.name in self.registry.gates:
            self.report([diag.error(diag.NAME_CLASH, f"{stmt.name!r} collides with a gate name", stmt.span)])
        self.declare(stmt.name, SymbolKind.SUBROUTINE, return_type, stmt.span)

    def stmt_SubroutineDef(self, stmt):
        self._declare_callable(stmt, stmt.return_type)
        with self.table.scope():
            for param in stmt.params:
                self.type_spec(param.type)
                kind = (SymbolKind.QUBIT_REGISTER if isinstance(param.type, ast.QubitType)
                        else SymbolKind.CLASSICAL_VARIABLE)
                self.declare(param.name, kind, param.type, param.span, param.access == "readonly")
            self.statements(stmt.body)

    def stmt_ExternDecl(self, stmt):
        self._declare_callable(stmt, stmt.return_type)

    def stmt_GateCall(self, stmt):
        for mod in stmt.modifiers:
            self.expr(getattr(mod, "count", None) or getattr(mod, "exponent", None))
        for arg in stmt.args:
            self.expr(arg)
        self.expr(stmt.duration)
        self.report(resolve_gate_call(self.registry, self.table, stmt))

    def stmt_Measure(self, stmt):
        self.report(check_qubit_operand(self.table, stmt.target))
        if stmt.destination is not None:
            self.expr(stmt.destination)
            info = self._symbol_of(stmt.destination)
            if info is not None and isinstance(stmt.destination, ast.Identifier):
                self.measure_widths(stmt.target, info.type, stmt.span)

    def stmt_Reset(self, stmt):
        self.report(check_qubit_operand(self.table, stmt.target))

    def stmt_Barrier(self, stmt):
        for operand in stmt.operands:
            self.report(check_qubit_operand(self.table, operand))

    def stmt_Delay(self, stmt):
        self.expr(stmt.duration)
        self.stmt_Barrier(stmt)

    def stmt_Box(self, stmt):
        self.expr(stmt.duration)
        self.scoped(stmt.body)

    def stmt_Return(self, stmt):
        self.expr(stmt.value)

    def stmt_If(self, stmt):
        self.expr(stmt.condition)
        self.scoped(stmt.then_body)
        if stmt.else_body is not None:
            self.scoped(stmt.else_body)

    def stmt_While(self, stmt):
        self.expr(stmt.condition)
        self.scoped(stmt.body)

    def stmt_For(self, stmt):
        self.type_spec(stmt.var_type)
        self.expr(stmt.iterable)
        with self.table.scope():
            self.declare(stmt.var, SymbolKind.LOOP_VARIABLE, stmt.var_type, stmt.span)
            self.statements(stmt.body)

    def stmt_ExpressionStmt(self, stmt):
        self.expr(stmt.expr)

    def stmt_Assignment(self, stmt):
        self.expr(stmt.target)
        info = self._symbol_of(stmt.target)
        if info is not None and info.const:
            name = _operand_name(stmt.target)
            self.report([diag.error(diag.CONST_WRITE, f"cannot assign to constant {name!r}", stmt.span)])
        self.expr(stmt.value)
        if isinstance(stmt.value, ast.MeasureExpr) and isinstance(stmt.target, ast.Identifier) and info:
            self.measure_widths(stmt.value.target, info.type, stmt.span)

    def stmt_Annotation(self, stmt):
        self.statement(stmt.statement)

    # helpers

    def _symbol_of(self, expr) -> Optional[SymbolInfo]:
        name = _operand_name(expr)
        return self.table.lookup(name) if name is not None else None

    def measure_widths(self, target, dest_type, span) -> None:
        """Compare register sizes when both are integer literals."""
        if not isinstance(target, ast.Identifier) or not isinstance(dest_type, ast.BitType):
            return
        info = self.table.lookup(target.name)
        if info is None or not isinstance(info.type, ast.QubitType):
            return
        size = info.type.size
        qubits = 1 if size is None else size.value if isinstance(size, ast.IntegerLit) else None
        bits = _literal_width(dest_type, 1)
        if qubits is not None and bits is not None and qubits != bits:
            self.report([diag.error(diag.WIDTH_MISMATCH,
                                    f"measuring {qubits} qubit(s) into {bits} bit(s)", span)])

    def type_spec(self, spec) -> None:
        if spec is None:
            return
        for child in ast.iter_children(spec):
            if isinstance(child, ast.TypeSpec):
                self.type_spec(child)
            else:
                self.expr(child)

    def expr(self, expr) -> None:
        if expr is None:
            return
        if isinstance(expr, ast.Identifier):
            if expr.name not in BUILTIN_CONSTANTS and self.table.lookup(expr.name) is None:
                self.report([diag.error(diag.UNDEF_SYMBOL, f"undefined symbol {expr.name!r}", expr.span)])
            return
        if isinstance(expr, ast.Call):
            info = self.table.lookup(expr.name)
            if expr.name not in BUILTIN_FUNCTIONS and (info is None or info.kind is not SymbolKind.SUBROUTINE):
                self.report([diag.error(diag.UNDEF_SYMBOL, f"undefined function {expr.name!r}", expr.span)])
        elif isinstance(expr, ast.MeasureExpr):
            self.report(check_qubit_operand(self.table, expr.target))
            return
        elif isinstance(expr, ast.DurationOf):
            self.scoped(expr.body)
            return
        elif isinstance(expr, ast.Cast):
            self.type_spec(expr.type)
            self.expr(expr.operand)
            return
        for child in ast.iter_children(expr):
            self.expr(child)


def analyze(program: ast.Program) -> list[Diagnostic]:
    """Run every semantic check over ``program`` in one source-order pass."""
    return Analyzer().run(program)
