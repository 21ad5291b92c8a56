import io
import json
import subprocess
import sys

import pytest

from qasm3front.cli import main

from oracles import CORPUS, corpus_files, negative_fixtures

CLEAN = 'OPENQASM 3.0;\ninclude "stdgates.inc";\nqubit[2] q;\nh q[0];\ncx q[0], q[1];\n'


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "bell.qasm": CLEAN,
        "broken.qasm": "OPENQASM 3.0;\nqubit q\nh q;\n",
        "empty.qasm": "",
        "undef.qasm": "OPENQASM 3.0;\nqubit q;\nfoo q;\n",
    }.items():
        path = tmp_path / name
        path.write_text(text)
        paths[name] = str(path)
    return paths


def test_parse_json_clean(files):
    code, out, err = run("parse", files["bell.qasm"], "--json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["program"]["kind"] == "Program"


def test_parse_multiple_files_is_ndjson_in_argument_order(files):
    code, out, _ = run("parse", files["bell.qasm"], files["empty.qasm"], "--json")
    docs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(docs) == 2
    assert docs[0]["program"]["version"] == [3, 0] and docs[1]["program"]["version"] is None


def test_parse_pretty(files):
    _, out, _ = run("parse", files["bell.qasm"], "--json", "--pretty")
    assert out.startswith("{\n  ")
    json.loads(out)


def test_parse_without_json_prints_nothing(files):
    assert run("parse", files["bell.qasm"]) == (0, "", "")


def test_parse_syntax_error_goes_to_stderr(files):
    code, out, err = run("parse", files["broken.qasm"])
    assert code == 1 and out == ""
    (line,) = err.splitlines()
    assert line.startswith(files["broken.qasm"] + ":3:1: error[E-SYNTAX]: ")


def test_parse_no_analyze_skips_semantics(files):
    assert run("parse", files["undef.qasm"], "--no-analyze")[0] == 0
    code, _, err = run("parse", files["undef.qasm"])
    assert code == 1 and "E-UNDEF-GATE" in err


def test_missing_file_exits_2(files, tmp_path):
    code, out, err = run("parse", str(tmp_path / "missing.qasm"), "--json")
    assert code == 2 and out == ""
    assert "missing.qasm" in err
    assert run("check", files["bell.qasm"], str(tmp_path / "missing.qasm"))[0] == 2


def test_check_summary(files):
    code, out, err = run("check", files["bell.qasm"], files["undef.qasm"])
    assert code == 1
    assert out == "2 files, 1 errors, 0 warnings\n"
    assert "E-UNDEF-GATE" in err


def test_check_empty_file_warns(files):
    code, out, err = run("check", files["empty.qasm"])
    assert code == 0
    assert out == "1 files, 0 errors, 1 warnings\n"
    assert "missing version statement" in err


def test_check_corpus():
    code, out, err = run("check", *map(str, corpus_files()))
    assert (code, out, err) == (0, "11 files, 0 errors, 0 warnings\n", "")


@pytest.mark.parametrize("path,code,line", negative_fixtures(), ids=lambda v: getattr(v, "name", str(v)))
def test_check_negative_fixture_exit_and_line(path, code, line):
    status, _, err = run("check", str(path))
    assert status == 1
    assert err.startswith(f"{path}:{line}:")
    assert f"error[{code}]" in err


def test_bench_default_corpus(tmp_path):
    csv_path = tmp_path / "t.csv"
    code, out, err = run("bench", "--iterations", "1", "--warmup", "0", "--csv", str(csv_path))
    assert code == 0 and err == ""
    for label in ("Success Rate", "Average Time", "Min Time", "Max Time"):
        assert label in out
    assert "100% (11/11 files)" in out
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "file,iteration,nanoseconds,success" and len(rows) == 12


def test_bench_with_explicit_dir_and_analyze():
    code, out, _ = run("bench", str(CORPUS), "--iterations", "2", "--warmup", "1", "--analyze")
    assert code == 0 and "100% (11/11 files)" in out


def test_bench_usage_errors(tmp_path):
    assert run("bench", str(tmp_path / "nope"))[0] == 2
    assert run("bench", str(tmp_path))[0] == 2  # no .qasm files
    assert run("bench", "--iterations", "0")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("parse")[0] == 2


def test_module_entry_point_uses_real_streams(files):
    proc = subprocess.run([sys.executable, "-m", "qasm3front", "parse", files["broken.qasm"], "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["program"]["kind"] == "Program"
    assert "E-SYNTAX" in proc.stderr and "E-SYNTAX" not in proc.stdout
