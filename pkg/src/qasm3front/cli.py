"""Command-line interface: ``qasm3front parse|check|bench``.

Standard output only carries payloads (AST JSON, the benchmark table);
diagnostics, summaries of failures and usage errors go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bench
from .diagnostics import Diagnostic, Severity
from .lexer import tokenize
from .semantics import analyze
from .serializer import serialize_program
from .stmt_parser import parse_program

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _UsageError(f"cannot read '{path}': {getattr(exc, 'strerror', None) or exc}") from exc


def _frontend(source: str, run_analysis: bool):
    tokens, diags = tokenize(source)
    outcome = parse_program(tokens, source)
    diags = diags + outcome.diagnostics
    if run_analysis:
        diags = diags + analyze(outcome.program)
    return outcome.program, diags


def _report(path: str, diags: list[Diagnostic], err) -> int:
    for d in diags:
        print(d.format(path), file=err)
    return sum(d.severity is Severity.ERROR for d in diags)


def cmd_parse(args, out, err) -> int:
    sources = [(p, _read(p)) for p in args.paths]
    errors = 0
    for path, source in sources:
        program, diags = _frontend(source, not args.no_analyze)
        errors += _report(path, diags, err)
        if args.json:
            out.write(serialize_program(program, pretty=args.pretty) + "\n")
    return EXIT_DIAGNOSTICS if errors else EXIT_OK


def cmd_check(args, out, err) -> int:
    sources = [(p, _read(p)) for p in args.paths]
    errors = warnings = 0
    for path, source in sources:
        _, diags = _frontend(source, True)
        errors += _report(path, diags, err)
        warnings += sum(d.severity is Severity.WARNING for d in diags)
    print(f"{len(sources)} files, {errors} errors, {warnings} warnings", file=out)
    return EXIT_DIAGNOSTICS if errors else EXIT_OK


def cmd_bench(args, out, err) -> int:
    corpus = Path(args.corpus_dir) if args.corpus_dir else bench.BUNDLED_CORPUS
    if not corpus.is_dir():
        raise _UsageError(f"corpus directory '{corpus}' does not exist")
    if not bench.corpus_files(corpus):
        raise _UsageError(f"corpus directory '{corpus}' contains no .qasm files")
    if args.iterations < 1 or args.warmup < 0:
        raise _UsageError("--iterations must be >= 1 and --warmup >= 0")
    report = bench.run_corpus(corpus, args.iterations, args.warmup, analyze=args.analyze)
    print(bench.format_table(report), file=out)
    if args.csv:
        try:
            with open(args.csv, "w", newline="", encoding="utf-8") as stream:
                bench.write_csv(report, stream)
        except OSError as exc:
            raise _UsageError(f"cannot write '{args.csv}': {exc.strerror or exc}") from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qasm3front", description="OpenQASM 3.0 frontend")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse files and optionally emit AST JSON")
    p.add_argument("paths", nargs="+")
    p.add_argument("--json", action="store_true", help="write one AST document per file to stdout")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--no-analyze", action="store_true", help="skip semantic analysis")
    p.set_defaults(handler=cmd_parse)

    c = sub.add_parser("check", help="run the full pipeline and report diagnostics")
    c.add_argument("paths", nargs="+")
    c.set_defaults(handler=cmd_check)

    b = sub.add_parser("bench", help="benchmark parsing over a corpus directory")
    b.add_argument("corpus_dir", nargs="?", default=None,
                   help="directory of .qasm files (default: bundled corpus)")
    b.add_argument("--iterations", type=int, default=100)
    b.add_argument("--warmup", type=int, default=10)
    b.add_argument("--csv", metavar="PATH", help="write raw per-iteration timings")
    b.add_argument("--analyze", action="store_true", help="include semantic analysis in timing")
    b.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.handler(args, out, err)
    except _UsageError as exc:
        print(f"qasm3front: error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
