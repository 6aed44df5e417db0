import io
import json

import pytest

from gmpideals.cli import main
from gmpideals.test.test_gmpi import L4_TEXT

L4_PROGRAM = "ring x[3], y[3];\nL := sqV(x,1)*sqV(y,3) + sqV(x,2)*sqV(y,2) + sqV(x,3)*sqV(y,1);\nmingens L;\n"
BASE_TEXT = "ring x[1], y[1];\nI := gens{x1*y1^3, x1^2*y1^2, x1^3*y1};\n"


@pytest.fixture
def program_file(tmp_path):
    def write(source: str):
        path = tmp_path / "programa.gmp"
        path.write_text(source, encoding="utf-8")
        return str(path)

    return write


def test_run_prints_generators(program_file, capsys):
    assert main(["run", program_file(L4_PROGRAM)]) == 0
    assert capsys.readouterr().out.strip() == L4_TEXT


def test_run_from_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("ring x[1];\nI := gens{x1^2};\nclosure I;\n"))
    assert main(["run", "-"]) == 0
    assert capsys.readouterr().out.strip() == "(x1^2)"


def test_run_json(program_file, capsys):
    assert main(["run", program_file("ring x[2];\nI := (x1^2, x2^2);\nclosure I;"), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "ok"
    assert report["ideal"] == "(x1^2, x1*x2, x2^2)"
    assert report["certificate"]["members"][0]["lambdas"] == ["1/2", "1/2"]


def test_strict_false_verdict_exits_one(program_file, capsys):
    path = program_file("ring x[2], y[2];\nI := sqV(x,2) + sqV(y,2);\nis-polymatroidal I;")
    assert main(["run", path]) == 0
    assert main(["run", path, "--strict"]) == 1
    assert capsys.readouterr().out.startswith("false")


def test_syntax_error_exits_two(program_file, capsys):
    assert main(["run", program_file("ring x[3];\nI := sqV(x 2);\nmingens I;")]) == 2
    assert capsys.readouterr().out.startswith("error [DslSyntaxError]: 2:12:")


def test_syntax_error_json(program_file, capsys):
    assert main(["run", program_file("ring x[3];\nI := sqV(x 2);\nmingens I;"), "--json"]) == 2
    error = json.loads(capsys.readouterr().out)["error"]
    assert error == {
        "type": "DslSyntaxError",
        "message": "Token inesperado; se encontró '2'",
        "line": 2,
        "column": 12,
        "expected": [","],
    }


def test_missing_program_exits_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "no-existe.gmp")]) == 2
    assert "InvalidArgumentError" in capsys.readouterr().out


def test_resource_bound_exits_three(program_file):
    path = program_file("ring x[3];\nI := V(x,2);\nbetti I;")
    assert main(["run", path, "--lattice-bound", "5"]) == 3


def test_schema(capsys):
    assert main(["schema"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert schema["title"] == "Report"
    assert {"command", "status", "value", "witness", "certificate", "betti"} <= set(schema["properties"])


def test_gmpi_builtin(tmp_path, capsys):
    base = tmp_path / "base.gmp"
    base.write_text(BASE_TEXT, encoding="utf-8")
    assert main(["gmpi", "--base", str(base), "--builtin", "sqV", "--sizes", "3,3"]) == 0
    assert capsys.readouterr().out.strip() == L4_TEXT


def test_gmpi_family_file(tmp_path, capsys):
    base = tmp_path / "base.gmp"
    family = tmp_path / "familia.txt"
    base.write_text("ring x[1], y[1];\nI := gens{x1^2*y1};\n", encoding="utf-8")
    family.write_text("x 2 (x1^2, x1*x2)\ny 1 @sqV\n", encoding="utf-8")
    assert main(["gmpi", "--base", str(base), "--family", str(family), "--sizes", "2,2", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["generators"] == ["x1^2*y1", "x1^2*y2", "x1*x2*y1", "x1*x2*y2"]


def test_gmpi_inclusion_violation(tmp_path, capsys):
    base = tmp_path / "base.gmp"
    family = tmp_path / "familia.txt"
    base.write_text("ring x[1], y[1];\nI := gens{x1^2, x1*y1};\n", encoding="utf-8")
    family.write_text("x 1 (x2)\nx 2 (x1^2)\ny 1 (y1)\n", encoding="utf-8")
    assert main(["gmpi", "--base", str(base), "--family", str(family), "--sizes", "2,1"]) == 2
    assert "InclusionViolationError" in capsys.readouterr().out


def test_bad_sizes_rejected_by_argparse(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["gmpi", "--base", str(tmp_path / "b"), "--builtin", "V", "--sizes", "3,x"])
    assert exc.value.code == 2
