import pytest

from qasm3front import ast, parse
from qasm3front.diagnostics import NO_VERSION, SYNTAX, UNRESOLVED_INCLUDE, UNSUPPORTED, VERSION, Severity

HEADER = 'OPENQASM 3.0;\ninclude "stdgates.inc";\n'


def stmts(body):
    outcome = parse(HEADER + body)
    assert not outcome.diagnostics, [d.format("t") for d in outcome.diagnostics]
    return outcome.program.statements[1:]


def one(body):
    (stmt,) = stmts(body)
    return stmt


def errors(source):
    return [(d.code, d.span.start_line, d.message) for d in parse(source).diagnostics]


def test_version_forms():
    assert parse("OPENQASM 3;").program.version == (3, 0)
    assert parse("OPENQASM 3.0;").program.version == (3, 0)
    outcome = parse("OPENQASM 2.0;\nqubit q;")
    assert outcome.program.version == (2, 0)
    assert outcome.diagnostics[0].code == VERSION and not outcome.success


def test_missing_version_is_a_warning():
    outcome = parse("qubit q;")
    assert outcome.program.version is None
    assert [(d.code, d.severity) for d in outcome.diagnostics] == [(NO_VERSION, Severity.WARNING)]
    assert outcome.success


def test_version_must_come_first():
    assert errors("qubit q;\nOPENQASM 3.0;")[-1][0] == VERSION


def test_include():
    assert stmts("") == ()
    outcome = parse('OPENQASM 3.0;\ninclude "mine.inc";')
    assert outcome.program.statements[0] == ast.IncludeStmt("mine.inc", span=None)
    assert [d.code for d in outcome.diagnostics] == [UNRESOLVED_INCLUDE]


def test_declarations():
    q, r, c, b, k = stmts('qubit[3] q;\nqreg r[2];\ncreg c[2];\nbit[2] b = "01";\nconst uint[8] k = 7;')
    assert q == ast.QuantumDecl("q", ast.IntegerLit(3, span=None), span=None)
    assert r.legacy and c.legacy and isinstance(c.type, ast.BitType)
    assert isinstance(b.init, ast.BitstringLit)
    assert k.const and isinstance(k.type, ast.UintType)
    io = one("input angle[16] theta;")
    assert io.io == "input" and io.init is None


def test_complex_and_array_types():
    z, arr = stmts("complex[float[32]] z;\narray[bit[2], 3, 4] arr;")
    assert isinstance(z.type.base, ast.FloatType)
    assert isinstance(arr.type.element, ast.BitType) and len(arr.type.dimensions) == 2


def test_alias_with_concatenation():
    stmt = stmts("qubit[2] a;\nqubit[2] b;\nlet ab = a ++ b[0];")[2]
    assert isinstance(stmt.target, ast.Concatenation) and len(stmt.target.parts) == 2


def test_gate_definition_and_calls():
    gate, call = stmts("gate g(t) a, b { rz(t) a; cx a, b; }\ninv @ ctrl(2) @ g(0.5) $0, $1, $2, $3;")
    assert gate.params == ("t",) and gate.qubits == ("a", "b") and len(gate.body) == 2
    assert [m.kind for m in call.modifiers] == ["Inv", "Ctrl"]
    assert call.modifiers[1].count == ast.IntegerLit(2, span=None)
    assert len(call.qubits) == 4


def test_gphase_and_duration_call():
    g, d = stmts("gphase(pi);\nqubit q;\nh[50ns] q;")[0::2]
    assert isinstance(g, ast.GateCall) and g.qubits == ()
    assert d.duration == ast.TimingLit(50, "ns", span=None)


def test_function_call_is_expression_statement():
    stmt = one("f(1, 2);")
    assert isinstance(stmt, ast.ExpressionStmt) and isinstance(stmt.expr, ast.Call)


def test_measurement_forms():
    a, b, c = stmts("qubit q;\nbit c;\nc = measure q;\nmeasure q -> c;\nmeasure q;")[2:]
    assert isinstance(a, ast.Assignment) and isinstance(a.value, ast.MeasureExpr)
    assert b.destination == ast.Identifier("c", span=None)
    assert c.destination is None


def test_timing_statements():
    d, bx, br = stmts("qubit q;\ndelay[1us] q;\nbox[2us] { h q; }\nbarrier;")[1:]
    assert isinstance(d, ast.Delay) and isinstance(bx, ast.Box) and br.operands == ()


def test_control_flow():
    loop, wl, branch = stmts(
        "for int i in [0:4] { break; }\nwhile (true) { continue; }\nif (x) end; else { end; }")
    assert isinstance(loop.iterable, ast.Range) and isinstance(loop.body[0], ast.Break)
    assert isinstance(wl.body[0], ast.Continue)
    assert isinstance(branch.then_body[0], ast.End) and len(branch.else_body) == 1


def test_for_over_set_and_expression():
    a, b = stmts("for int i in {1, 2} { }\nfor int j in arr { }")
    assert isinstance(a.iterable, ast.SetLiteral) and isinstance(b.iterable, ast.Identifier)


def test_subroutine_and_extern():
    sub, ext = stmts("def f(int[32] a, readonly array[int[8], 2] b, qubit q) -> bit { return a; }\n"
                     "extern g(float[64], int) -> int;")
    assert [p.name for p in sub.params] == ["a", "b", "q"]
    assert sub.params[1].access == "readonly" and isinstance(sub.return_type, ast.BitType)
    assert isinstance(sub.body[0], ast.Return)
    assert len(ext.param_types) == 2


def test_compound_assignment():
    stmt = one("x <<= 2;")
    assert stmt.op == "<<="


def test_directives_and_calibration():
    prag, ann, gram, cal, defcal = stmts(
        'pragma opt level 2\n@bind x y\nh $0;\ndefcalgrammar "openpulse";\n'
        "cal { play(a, {1}); }\ndefcal x $0 { nested { braces } }")
    assert prag.text == "opt level 2"
    assert ann.name == "bind" and ann.text == "x y" and isinstance(ann.statement, ast.GateCall)
    assert gram.name == "openpulse"
    assert cal.raw == "play(a, {1});"
    assert defcal.signature == "x $0" and defcal.raw == "nested { braces }"


def test_statement_spans():
    program = parse(HEADER + "qubit[2] q;\n  h q[0];").program
    h = program.statements[2]
    assert (h.span.start_line, h.span.start_col, h.span.end_line, h.span.end_col) == (4, 3, 4, 10)
    assert program.span.start_offset == 0


@pytest.mark.parametrize("source,code,line,message", [
    ("OPENQASM 3.0;\nqubit q\nh q;", SYNTAX, 3, "expected ';'"),
    ("OPENQASM 3.0;\ngate g a { int x = 1; h a; }", SYNTAX, 2, "only quantum statements in gate body"),
    ("OPENQASM 3.0;\nfor i in [0:2] { }", SYNTAX, 2, "requires a type"),
    ("OPENQASM 3.0;\nconst int x;", SYNTAX, 2, "requires an initializer"),
    ("OPENQASM 3.0;\ninput int x = 1;", SYNTAX, 2, "cannot have initializer"),
    ("OPENQASM 3.0;\nqubit q = 1;", SYNTAX, 2, "cannot be initialized"),
    ("OPENQASM 3.0;\n1 = x;", SYNTAX, 2, "left side of assignment"),
    ("OPENQASM 3.0;\nif (x) { h q;\nqubit r;", SYNTAX, 2, "unclosed '{'"),
    ("OPENQASM 3.0;\n}\nqubit r;", SYNTAX, 2, "unmatched '}'"),
    ("OPENQASM 3.0;\nbox { qubit r; }", SYNTAX, 2, "not allowed in box body"),
    ("OPENQASM 3.0;\ndef f(a) { }", SYNTAX, 2, "parameter 'a' requires type"),
    ("OPENQASM 3.0;\n{ h q; }", UNSUPPORTED, 2, "bare scope"),
    ("OPENQASM 3.0;\nswitch (x) { case 1 { } }", UNSUPPORTED, 2, "switch"),
    ("OPENQASM 3.0;\nmeasure q -> 1;", SYNTAX, 2, "destination"),
    ("OPENQASM 3.0;\nctrl @ pow x q;", SYNTAX, 2, "parenthesized exponent"),
])
def test_syntax_diagnostics(source, code, line, message):
    found = errors(source)
    assert found, source
    got_code, got_line, got_message = found[0]
    assert (got_code, got_line) == (code, line)
    assert message in got_message


def test_panic_mode_reports_every_error_and_keeps_going():
    source = "OPENQASM 3.0;\nqubit q\nh q;\nint = 3;\nx q;\nbit b = ;\nreset q;"
    outcome = parse(source)
    assert [d.span.start_line for d in outcome.diagnostics] == [3, 4, 6]
    kinds = [s.kind for s in outcome.program.statements]
    assert kinds[-2:] == ["GateCall", "Reset"]


def test_recovery_inside_block_stops_at_closing_brace():
    outcome = parse("OPENQASM 3.0;\nif (x) { int = 2; x q; }\nreset q;")
    assert len(outcome.diagnostics) == 1
    branch, reset = outcome.program.statements
    assert [s.name for s in branch.then_body] == ["x"]
    assert isinstance(reset, ast.Reset)


def test_empty_source():
    outcome = parse("")
    assert outcome.program.statements == ()
    assert [d.code for d in outcome.diagnostics] == [NO_VERSION]
