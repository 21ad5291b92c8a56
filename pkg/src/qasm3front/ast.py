"""Span-annotated AST for OpenQASM 3.0 programs.

Nodes are frozen dataclasses; sequences are stored as tuples so a tree is
immutable once built. Field order follows source order, which is what
:func:`walk` relies on to visit children in the order they were written.
Names of declared entities (registers, gates, variables) are plain
strings, while every sub-expression is a node.
"""

from __future__ import annotations

from dataclasses import KW_ONLY, dataclass, field, fields
from typing import Callable, Iterator, Optional, Union

from .span import SourceSpan


@dataclass(frozen=True)
class Node:
    _: KW_ONLY
    span: SourceSpan = field(compare=False, repr=False)

    @property
    def kind(self) -> str:
        return type(self).__name__


class Expression(Node):
    pass


class TypeSpec(Node):
    pass


class Modifier(Node):
    pass


class Statement(Node):
    pass


Body = tuple[Statement, ...]

# -- expressions ---------------------------------------------------------------


@dataclass(frozen=True)
class IntegerLit(Expression):
    value: int


@dataclass(frozen=True)
class FloatLit(Expression):
    value: float


@dataclass(frozen=True)
class ImaginaryLit(Expression):
    value: Union[int, float]


@dataclass(frozen=True)
class BooleanLit(Expression):
    value: bool


@dataclass(frozen=True)
class BitstringLit(Expression):
    bits: str

    @property
    def width(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return int(self.bits, 2)


@dataclass(frozen=True)
class TimingLit(Expression):
    value: Union[int, float]
    unit: str


@dataclass(frozen=True)
class Identifier(Expression):
    name: str


@dataclass(frozen=True)
class HardwareQubit(Expression):
    index: int


@dataclass(frozen=True)
class Unary(Expression):
    op: str
    operand: Expression


@dataclass(frozen=True)
class Binary(Expression):
    op: str
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Range(Expression):
    start: Optional[Expression]
    step: Optional[Expression]
    end: Optional[Expression]


@dataclass(frozen=True)
class SetLiteral(Expression):
    elements: tuple[Expression, ...]


@dataclass(frozen=True)
class Index(Expression):
    base: Expression
    # a single SetLiteral entry selects an arbitrary set of positions
    indices: tuple[Expression, ...]


@dataclass(frozen=True)
class Call(Expression):
    name: str
    args: tuple[Expression, ...]


@dataclass(frozen=True)
class Cast(Expression):
    type: TypeSpec
    operand: Expression


@dataclass(frozen=True)
class DurationOf(Expression):
    body: Body


@dataclass(frozen=True)
class SizeOf(Expression):
    args: tuple[Expression, ...]


@dataclass(frozen=True)
class ArrayLiteral(Expression):
    elements: tuple[Expression, ...]


@dataclass(frozen=True)
class MeasureExpr(Expression):
    target: Expression


@dataclass(frozen=True)
class Concatenation(Expression):
    """``a ++ b ++ ...``; only valid as an alias target."""

    parts: tuple[Expression, ...]


# -- types ---------------------------------------------------------------------


@dataclass(frozen=True)
class BitType(TypeSpec):
    width: Optional[Expression] = None


@dataclass(frozen=True)
class IntType(TypeSpec):
    width: Optional[Expression] = None


@dataclass(frozen=True)
class UintType(TypeSpec):
    width: Optional[Expression] = None


@dataclass(frozen=True)
class FloatType(TypeSpec):
    width: Optional[Expression] = None


@dataclass(frozen=True)
class AngleType(TypeSpec):
    width: Optional[Expression] = None


@dataclass(frozen=True)
class BoolType(TypeSpec):
    pass


@dataclass(frozen=True)
class ComplexType(TypeSpec):
    base: Optional[FloatType] = None


@dataclass(frozen=True)
class DurationType(TypeSpec):
    pass


@dataclass(frozen=True)
class StretchType(TypeSpec):
    pass


@dataclass(frozen=True)
class QubitType(TypeSpec):
    size: Optional[Expression] = None


@dataclass(frozen=True)
class ArrayType(TypeSpec):
    element: TypeSpec
    dimensions: tuple[Expression, ...]


# -- gate modifiers ------------------------------------------------------------


@dataclass(frozen=True)
class Ctrl(Modifier):
    count: Optional[Expression] = None


@dataclass(frozen=True)
class NegCtrl(Modifier):
    count: Optional[Expression] = None


@dataclass(frozen=True)
class Inv(Modifier):
    pass


@dataclass(frozen=True)
class Pow(Modifier):
    exponent: Expression


# -- statements ----------------------------------------------------------------


@dataclass(frozen=True)
class IncludeStmt(Statement):
    path: str


@dataclass(frozen=True)
class QuantumDecl(Statement):
    name: str
    size: Optional[Expression] = None
    legacy: bool = False


@dataclass(frozen=True)
class ClassicalDecl(Statement):
    type: TypeSpec
    name: str
    init: Optional[Expression] = None
    const: bool = False
    io: Optional[str] = None  # "input" | "output"
    legacy: bool = False


@dataclass(frozen=True)
class AliasDecl(Statement):
    name: str
    target: Expression


@dataclass(frozen=True)
class GateDef(Statement):
    name: str
    params: tuple[str, ...]
    qubits: tuple[str, ...]
    body: Body


@dataclass(frozen=True)
class GateCall(Statement):
    modifiers: tuple[Modifier, ...]
    name: str
    args: tuple[Expression, ...]
    duration: Optional[Expression]
    qubits: tuple[Expression, ...]


@dataclass(frozen=True)
class Measure(Statement):
    target: Expression
    destination: Optional[Expression] = None


@dataclass(frozen=True)
class Reset(Statement):
    target: Expression


@dataclass(frozen=True)
class Barrier(Statement):
    operands: tuple[Expression, ...]


@dataclass(frozen=True)
class Delay(Statement):
    duration: Expression
    operands: tuple[Expression, ...]


@dataclass(frozen=True)
class Box(Statement):
    duration: Optional[Expression]
    body: Body


@dataclass(frozen=True)
class Param(Node):
    type: TypeSpec
    name: str
    access: Optional[str] = None  # "readonly" | "mutable" for array references


@dataclass(frozen=True)
class SubroutineDef(Statement):
    name: str
    params: tuple[Param, ...]
    return_type: Optional[TypeSpec]
    body: Body


@dataclass(frozen=True)
class ExternDecl(Statement):
    name: str
    param_types: tuple[TypeSpec, ...]
    return_type: Optional[TypeSpec]


@dataclass(frozen=True)
class Return(Statement):
    value: Optional[Expression] = None


@dataclass(frozen=True)
class If(Statement):
    condition: Expression
    then_body: Body
    else_body: Optional[Body] = None


@dataclass(frozen=True)
class For(Statement):
    var_type: TypeSpec
    var: str
    iterable: Expression  # Range, SetLiteral or any other expression
    body: Body


@dataclass(frozen=True)
class While(Statement):
    condition: Expression
    body: Body


@dataclass(frozen=True)
class Break(Statement):
    pass


@dataclass(frozen=True)
class Continue(Statement):
    pass


@dataclass(frozen=True)
class End(Statement):
    pass


@dataclass(frozen=True)
class ExpressionStmt(Statement):
    expr: Expression


@dataclass(frozen=True)
class Assignment(Statement):
    target: Expression
    op: str
    value: Expression


@dataclass(frozen=True)
class Pragma(Statement):
    text: str


@dataclass(frozen=True)
class Annotation(Statement):
    name: str
    text: str
    statement: Statement


@dataclass(frozen=True)
class CalGrammar(Statement):
    name: str


@dataclass(frozen=True)
class CalBlock(Statement):
    raw: str


@dataclass(frozen=True)
class DefcalBlock(Statement):
    signature: str
    raw: str


@dataclass(frozen=True)
class Program(Node):
    version: Optional[tuple[int, int]]
    statements: Body


def _subclasses(cls):
    for sub in cls.__subclasses__():
        yield sub
        yield from _subclasses(sub)


NODE_TYPES: dict[str, type[Node]] = {
    cls.__name__: cls for cls in _subclasses(Node)
    if cls not in (Expression, TypeSpec, Modifier, Statement)
}

GATE_BODY_STATEMENTS = (GateCall, Barrier, Delay, Box)


# -- traversal -----------------------------------------------------------------


def dataclass_fields(cls: type[Node]):
    """Dataclass fields of a node class other than its span, in declaration order."""
    return [f for f in fields(cls) if f.name != "span"]


def node_fields(node: Node):
    return dataclass_fields(type(node))


def _nodes_in(value) -> Iterator[Node]:
    if isinstance(value, Node):
        yield value
    elif isinstance(value, tuple):
        for item in value:
            yield from _nodes_in(item)


def iter_children(node: Node) -> Iterator[Node]:
    for f in node_fields(node):
        yield from _nodes_in(getattr(node, f.name))


class NodeVisitor:
    """Callback set for :func:`walk`.

    Define ``visit_<Kind>`` methods for the node kinds of interest;
    everything else goes to :meth:`generic_visit`, which does nothing.
    """

    def __call__(self, node: Node) -> None:
        getattr(self, "visit_" + type(node).__name__, self.generic_visit)(node)

    def generic_visit(self, node: Node) -> None:
        pass


def walk(node: Node, visitor: Callable[[Node], object]) -> None:
    """Visit every node below and including ``node`` in depth-first pre-order."""
    stack = [node]
    while stack:
        current = stack.pop()
        visitor(current)
        stack.extend(reversed(list(iter_children(current))))


def structural_equal(a, b) -> bool:
    """True iff ``a`` and ``b`` are the same tree, ignoring spans.

    Stricter than ``==``: scalar payloads must also agree in type, so
    ``100ns`` and ``100.0ns`` are different trees.
    """
    if type(a) is not type(b):
        return False
    if isinstance(a, Node):
        return all(structural_equal(getattr(a, f.name), getattr(b, f.name))
                   for f in node_fields(a))
    if isinstance(a, tuple):
        return len(a) == len(b) and all(structural_equal(x, y) for x, y in zip(a, b))
    return a == b
