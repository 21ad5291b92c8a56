"""End-to-end acceptance checks. Each test records a PASS/FAIL line that is
printed in the pytest terminal summary."""

import random
import subprocess
import sys
import time

from qasm3front import analyze, ast, parse, tokenize
from qasm3front.bench import ROW_LABELS, format_table, run_corpus
from qasm3front.diagnostics import SEMANTIC_CODES, has_errors
from qasm3front.expr_parser import parse_expression_text
from qasm3front.lexer import reconstruct
from qasm3front.serializer import deserialize_program, render_canonical, serialize_program

from oracles import CORPUS, corpus_files, flat_text, negative_fixtures, oracle_tree, random_flat_expression


def test_1_corpus_success_rate(verdict):
    start = time.perf_counter()
    files = corpus_files()
    clean = 0
    for path in files:
        outcome = parse(path.read_text(encoding="utf-8"))
        diags = outcome.diagnostics + analyze(outcome.program)
        clean += not has_errors(diags)
    elapsed = time.perf_counter() - start
    ok = len(files) == 11 and clean == 11 and elapsed < 5.0
    assert verdict(1, "corpus success rate", ok, f"{clean}/{len(files)} files clean in {elapsed:.3f}s, bound 5s")


def test_2_timing_shape(verdict):
    report = run_corpus(CORPUS, iterations=100, warmup=10)
    stats = report.stats
    table = format_table(report)
    rows_present = all(label in table for label in ROW_LABELS)
    ok = (rows_present and stats is not None and stats.average_ms < 50.0
          and stats.min_ms <= stats.average_ms <= stats.max_ms)
    detail = (f"{report.success_rate}; avg {stats.average_ms:.2f} ms, min {stats.min_ms:.2f} ms, "
              f"max {stats.max_ms:.2f} ms; bound avg < 50 ms" if stats else "no successful files")
    print(table)
    assert verdict(2, "timing shape", ok, detail)


def test_3_precedence_oracle(verdict):
    rng = random.Random(3)
    start = time.perf_counter()
    mismatches = 0
    cases = 10_000
    for _ in range(cases):
        items = random_flat_expression(rng, max_depth=6)
        got, diags = parse_expression_text(flat_text(items))
        if diags or not ast.structural_equal(got, oracle_tree(items)):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60.0
    assert verdict(3, "precedence oracle", ok, f"{cases} expressions, {mismatches} mismatches, {elapsed:.2f}s")


def test_4_round_trip(verdict):
    failures = []
    for path in corpus_files():
        program = parse(path.read_text(encoding="utf-8")).program
        if not ast.structural_equal(program, parse(render_canonical(program)).program):
            failures.append(f"{path.name}: text")
        if not ast.structural_equal(program, deserialize_program(serialize_program(program))):
            failures.append(f"{path.name}: json")
    assert verdict(4, "round trip", not failures,
                   f"{2 * len(corpus_files())} round trips, failures: {failures or 'none'}")


def test_5_diagnostic_coverage(verdict):
    triggered, problems = set(), []
    for path, code, line in negative_fixtures():
        outcome = parse(path.read_text(encoding="utf-8"))
        hits = [(d.code, d.span.start_line) for d in outcome.diagnostics + analyze(outcome.program)]
        if (code, line) in hits:
            triggered.add(code)
        else:
            problems.append(f"{path.name}: want {code}@{line}, got {hits}")
    missing = sorted(set(SEMANTIC_CODES) - triggered)
    ok = not missing and not problems
    assert verdict(5, "diagnostic coverage", ok,
                   f"{len(triggered)}/{len(SEMANTIC_CODES)} codes at expected lines; "
                   f"missing {missing or 'none'}; problems {problems or 'none'}")


def test_6_lossless_lexing(verdict):
    bad = []
    for path in corpus_files():
        raw = path.read_bytes()
        source = raw.decode("utf-8")
        tokens, _ = tokenize(source)
        if reconstruct(source, tokens).encode("utf-8") != raw:
            bad.append(path.name)
    assert verdict(6, "lossless lexing", not bad, f"{len(corpus_files())} files, mismatches: {bad or 'none'}")


def test_7_determinism(verdict):
    paths = [str(p) for p in corpus_files()]

    def once():
        return subprocess.run([sys.executable, "-m", "qasm3front", "parse", "--json", *paths],
                              capture_output=True, check=False).stdout

    first, second = once(), once()
    ok = first == second and first.count(b"\n") == len(paths)
    assert verdict(7, "determinism", ok, f"{len(first)} bytes of NDJSON, identical={first == second}")
