"""Corpus benchmark harness.

Each ``.qasm`` file in a directory is read once, parsed ``warmup`` times
untimed, then ``iterations`` times under ``perf_counter_ns``. Only the
tokenize+parse call sits inside the timed region (plus the semantic pass
when ``analyze`` is set); file I/O and serialization never do.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .diagnostics import has_errors
from .lexer import tokenize
from .semantics import analyze as run_analysis
from .stmt_parser import parse_program

BUNDLED_CORPUS = Path(__file__).parent / "corpus"
ROW_LABELS = ("Success Rate", "Average Time", "Min Time", "Max Time")
CSV_COLUMNS = ("file", "iteration", "nanoseconds", "success")


@dataclass
class FileResult:
    path: str
    success: bool
    samples_ns: list[int] = field(default_factory=list)

    @property
    def mean_ms(self) -> Optional[float]:
        if not self.samples_ns:
            return None
        return statistics.fmean(self.samples_ns) / 1e6


@dataclass(frozen=True)
class Stats:
    average_ms: float
    min_ms: float
    max_ms: float


@dataclass
class BenchmarkReport:
    per_file: list[FileResult]

    @property
    def succeeded(self) -> int:
        return sum(r.success for r in self.per_file)

    @property
    def success_rate(self) -> str:
        return format_success_rate(self.succeeded, len(self.per_file))

    @property
    def stats(self) -> Optional[Stats]:
        return compute_stats(self.per_file)


def _run_once(source: str, analyze: bool) -> bool:
    tokens, diags = tokenize(source)
    outcome = parse_program(tokens, source)
    diags = diags + outcome.diagnostics
    if analyze:
        diags = diags + run_analysis(outcome.program)
    return not has_errors(diags)


def bench_file(path: Path, iterations: int, warmup: int, analyze: bool = False) -> FileResult:
    try:
        source = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError):
        return FileResult(str(path), False, [])
    for _ in range(warmup):
        _run_once(source, analyze)
    samples, success = [], True
    for _ in range(iterations):
        start = time.perf_counter_ns()
        ok = _run_once(source, analyze)
        samples.append(time.perf_counter_ns() - start)
        success = success and ok
    return FileResult(str(path), success, samples)


def corpus_files(directory: Path) -> list[Path]:
    return sorted(p for p in Path(directory).iterdir() if p.suffix == ".qasm" and p.is_file())


def run_corpus(directory, iterations: int = 100, warmup: int = 10,
               analyze: bool = False) -> BenchmarkReport:
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if warmup < 0:
        raise ValueError("warmup must be non-negative")
    return BenchmarkReport([bench_file(p, iterations, warmup, analyze)
                            for p in corpus_files(Path(directory))])


def compute_stats(results: list[FileResult]) -> Optional[Stats]:
    """Mean of per-file means plus extrema, over successful files; None if there are none."""
    means = [r.mean_ms for r in results if r.success and r.mean_ms is not None]
    if not means:
        return None
    return Stats(statistics.fmean(means), min(means), max(means))


def format_success_rate(succeeded: int, total: int) -> str:
    if total == 0:
        return "n/a (0/0 files)"
    pct = round(100.0 * succeeded / total, 1)
    text = f"{pct:.0f}" if pct == int(pct) else f"{pct:.1f}"
    return f"{text}% ({succeeded}/{total} files)"


def _ms(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.2f} ms"


def table_rows(report: BenchmarkReport) -> list[tuple[str, str]]:
    stats = report.stats
    values = [None, None, None] if stats is None else [stats.average_ms, stats.min_ms, stats.max_ms]
    return list(zip(ROW_LABELS, [report.success_rate] + [_ms(v) for v in values]))


def format_table(report: BenchmarkReport) -> str:
    rows = [("Result", "qasm3front")] + table_rows(report)
    left = max(len(label) for label, _ in rows)
    right = max(len(value) for _, value in rows)
    rule = f"+-{'-' * left}-+-{'-' * right}-+"
    lines = [rule]
    for i, (label, value) in enumerate(rows):
        lines.append(f"| {label:<{left}} | {value:>{right}} |")
        if i == 0:
            lines.append(rule)
    lines.append(rule)
    return "\n".join(lines)


def write_csv(report: BenchmarkReport, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for result in report.per_file:
        for i, ns in enumerate(result.samples_ns):
            writer.writerow((result.path, i, ns, str(result.success).lower()))
