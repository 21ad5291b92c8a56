import dataclasses

import pytest

from qasm3front import ast, parse
from qasm3front.span import SourceSpan

from oracles import corpus_files, count_nodes

S1 = SourceSpan(0, 1, 1, 1, 1, 2)
S2 = SourceSpan(5, 9, 2, 1, 2, 5)


def test_span_ignored_by_equality():
    assert ast.Identifier("q", span=S1) == ast.Identifier("q", span=S2)
    assert ast.structural_equal(ast.Identifier("q", span=S1), ast.Identifier("q", span=S2))


def test_structural_equal_is_type_strict():
    assert ast.IntegerLit(1, span=S1) != ast.FloatLit(1.0, span=S1)
    a = ast.TimingLit(100, "ns", span=S1)
    b = ast.TimingLit(100.0, "ns", span=S1)
    assert a == b  # dataclass equality follows Python numerics
    assert not ast.structural_equal(a, b)
    assert not ast.structural_equal(ast.Ctrl(None, span=S1), ast.NegCtrl(None, span=S1))


def test_nodes_are_frozen():
    node = ast.Identifier("q", span=S1)
    with pytest.raises(dataclasses.FrozenInstanceError):
        node.name = "r"


def test_kind_and_registry():
    assert ast.Binary("+", ast.Identifier("a", span=S1), ast.Identifier("b", span=S1), span=S1).kind == "Binary"
    assert "Program" in ast.NODE_TYPES and "GateCall" in ast.NODE_TYPES
    for abstract in ("Node", "Expression", "Statement", "TypeSpec", "Modifier"):
        assert abstract not in ast.NODE_TYPES
    assert all(issubclass(cls, ast.Node) for cls in ast.NODE_TYPES.values())


def test_span_merge_and_contains():
    merged = S1.merge(S2)
    assert merged.start_offset == 0 and merged.end_offset == 9
    assert merged.contains(S1) and merged.contains(S2)
    assert not S1.contains(S2)
    assert S1.as_list() == [0, 1, 1, 1, 1, 2]


def test_span_rejects_inverted_offsets():
    with pytest.raises(ValueError):
        SourceSpan(5, 2, 1, 1, 1, 1)


def test_walk_is_preorder_in_source_order():
    outcome = parse("OPENQASM 3.0;\nint x = a + b * c;")
    seen = []
    ast.walk(outcome.program, lambda n: seen.append(n.name if isinstance(n, ast.Identifier) else n.kind))
    assert seen == ["Program", "ClassicalDecl", "IntType", "Binary", "a", "Binary", "b", "c"]


def test_node_visitor_dispatch():
    class Gates(ast.NodeVisitor):
        def __init__(self):
            self.names = []

        def visit_GateCall(self, node):
            self.names.append(node.name)

    visitor = Gates()
    ast.walk(parse('OPENQASM 3.0;\ninclude "stdgates.inc";\nqubit[2] q;\nh q[0];\ncx q[0], q[1];').program, visitor)
    assert visitor.names == ["h", "cx"]


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_walk_matches_independent_count(path):
    program = parse(path.read_text(encoding="utf-8")).program
    visited = []
    ast.walk(program, visited.append)
    assert len(visited) == count_nodes(program)


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_child_spans_nest_inside_parent(path):
    program = parse(path.read_text(encoding="utf-8")).program

    def check(node):
        for child in ast.iter_children(node):
            assert node.span.contains(child.span), (node.kind, child.kind)
            check(child)

    check(program)
