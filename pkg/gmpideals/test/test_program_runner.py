from fractions import Fraction
from pathlib import Path

import pytest

from gmpideals.core.errors import (
    DslSemanticError,
    DslSyntaxError,
    InvalidArgumentError,
    ResourceBoundError,
)
from gmpideals.parsers.dsl import parse
from gmpideals.parsers.family_file import parse_base_text, parse_family_text
from gmpideals.services.ideal_algebra import power
from gmpideals.services.integral_closure import NewtonMembership
from gmpideals.services.ring_core import VariableContext
from gmpideals.services.program_runner import (
    ProgramRunner,
    RunOptions,
    error_report,
    exit_code,
    render_text,
)
from gmpideals.test.conftest import ideal_of, mono
from gmpideals.test.test_gmpi import L4_TEXT

GOLDEN = Path(__file__).parent / "golden"
BASE_TEXT = "ring x[1], y[1];\nI := gens{x1*y1^3, x1^2*y1^2, x1^3*y1};\n"


def run(source: str, **options):
    return ProgramRunner(RunOptions(**options)).run_source(source)


@pytest.mark.parametrize("program", sorted(GOLDEN.glob("*.gmp")), ids=lambda p: p.stem)
def test_golden_programs(program):
    expected = program.with_suffix(".out").read_text(encoding="utf-8").rstrip("\n")
    report = ProgramRunner().run_source(program.read_text(encoding="utf-8"))
    assert render_text(report) == expected


def test_mingens_report():
    report = run("ring x[2];\nI := (x1^2, x1^2*x2, x2);\nmingens I;")
    assert report.value == 2
    assert report.ideal == "(x1^2, x2)"
    assert report.generators == ["x1^2", "x2"]


def test_program_validation():
    with pytest.raises(DslSemanticError):
        run("ring x[2];\nI := (x1);\nfactor I;")
    with pytest.raises(DslSemanticError):
        run("ring x[2];\nI := (x1);\nequal I;")
    with pytest.raises(DslSemanticError):
        run("ring x[2];\nI := (x1);\nmingens I --power 2;")
    with pytest.raises(DslSemanticError):
        run("ring x[2];\nI := (x1);\nis-normal I --power dos;")
    with pytest.raises(DslSyntaxError):
        run("ring x[2];\nI := (x1)\nmingens I;")


def test_outside_options_win_over_program_flags():
    cmd = parse("ring x[2];\nI := (x1);\nlinquot I --strategy exhaustive --strict;").command
    merged = RunOptions(strategy="lex").merged_with(cmd)
    assert merged.strategy == "lex"
    assert merged.strict is True
    assert RunOptions().merged_with(cmd).strategy == "exhaustive"


def test_strict_flag_in_program_is_effective():
    runner = ProgramRunner()
    report = runner.run_source("ring x[2], y[2];\nI := (x1*x2, y1*y2);\nlinquot I --strict;")
    assert report.value is False
    assert runner.effective_options.strict
    assert exit_code(report, runner.effective_options.strict) == 1


def test_linquot_incomplete_search():
    report = run("ring x[2], y[2];\nI := (x1*x2, y1*y2);\nlinquot I --exhaustive-threshold 1;")
    assert report.value is False
    assert report.incomplete is True
    assert report.bounds == {"exhaustive_threshold": 1}
    assert any("incompleta" in note for note in report.notes)
    assert any("paso 1" in note for note in report.notes)


def test_linquot_exhaustive_refused():
    with pytest.raises(ResourceBoundError):
        run("ring x[2], y[2];\nI := (x1*x2, y1*y2);\nlinquot I --strategy exhaustive --exhaustive-threshold 1;")


def test_rvalue():
    report = run("ring x[3];\nM := (x1, x2, x3);\nrvalue M;")
    assert report.value == 2
    assert report.certificate.colon_vars == [["x1"], ["x1", "x2"]]
    with pytest.raises(InvalidArgumentError):
        run("ring x[2], y[2];\nI := (x1*x2, y1*y2);\nrvalue I;")


def test_betti_conventions():
    ideal = run("ring x[2];\nm := (x1, x2);\nbetti m;")
    assert ideal.betti.convention == "ideal"
    assert [(e.i, e.j, e.rank) for e in ideal.betti.entries] == [(0, 1, 2), (1, 2, 1)]
    quotient = run("ring x[2];\nm := (x1, x2);\nbetti m --of quotient;")
    assert quotient.betti.pd == 2
    assert run("ring x[2];\nm := (x1, x2);\npd m;").value == 2
    assert run("ring x[2];\nm := (x1, x2);\npd m --of ideal;").value == 1
    assert run("ring x[2];\nm := (x1, x2);\nreg m;").value == 0
    with pytest.raises(DslSemanticError):
        run("ring x[2];\nm := (x1, x2);\npd m --of module;")
    with pytest.raises(InvalidArgumentError):
        run("ring x[2];\nm := (1);\npd m;")


def test_lattice_bound_option():
    with pytest.raises(ResourceBoundError):
        run("ring x[3];\nI := V(x,2);\nbetti I;", lattice_bound=5)


def test_closure_certificates():
    report = run("ring x[2];\nI := (x1^2, x2^2);\nclosure I;")
    assert report.ideal == "(x1^2, x1*x2, x2^2)"
    (member,) = report.certificate.members
    assert member.monomial == "x1*x2"
    assert member.lambdas == ["1/2", "1/2"]


def test_is_closed_witness():
    report = run("ring x[2];\nI := (x1^2, x2^2);\nis-closed I;")
    assert report.value is False
    assert report.witness.kind == "closure"
    assert report.witness.u == "x1*x2"
    assert report.certificate.kind == "newton"
    assert report.certificate.power == 1
    assert report.certificate.members[0].lambdas == ["1/2", "1/2"]
    assert run("ring x[2];\nI := (x1, x2)^2;\nis-closed I;").value is True


def test_is_normal_bound_note():
    report = run("ring x[2];\nI := (x1, x2);\nis-normal I --power 2;")
    assert report.value is True
    assert report.bounds == {"power": 2}
    assert "no prueba la normalidad" in report.notes[0]


def test_equal():
    assert run("ring x[2];\nA := V(x,1)^2;\nB := V(x,2);\nequal A B;").value is True
    assert run("ring x[2];\nA := sqV(x,2);\nB := V(x,2);\nequal A B;").value is False


def test_exit_codes():
    report = run("ring x[2];\nA := sqV(x,2);\nB := V(x,2);\nequal A B;")
    assert exit_code(report, strict=False) == 0
    assert exit_code(report, strict=True) == 1
    assert exit_code(run("ring x[2];\nA := (x1);\nmingens A;"), strict=True) == 0
    assert exit_code(error_report("run", InvalidArgumentError("x")), strict=False) == 2


def test_syntax_error_report():
    with pytest.raises(DslSyntaxError) as exc:
        run("ring x[3];\nI := sqV(x 2);\nmingens I;")
    report = error_report("run", exc.value)
    assert report.status == "error"
    assert (report.error.line, report.error.column) == (2, 12)
    assert report.error.expected == [","]
    assert render_text(report).startswith("error [DslSyntaxError]: 2:12: ")


def test_build_gmpi_builtin():
    base = parse_base_text(BASE_TEXT)
    report = ProgramRunner().build_gmpi(base, builtin="sqV", sizes=(3, 3))
    assert report.ideal == L4_TEXT
    assert report.value == 15
    assert "inclusiones verificadas: 6" in report.notes
    assert render_text(report) == L4_TEXT


def test_build_gmpi_family_notes():
    base = parse_base_text("ring x[1], y[1];\nI := gens{x1^2*y1};\n")
    family = parse_family_text("x 2 (x1^2, x2^3)\ny 1 (y1)\n", base, (2, 1))
    report = ProgramRunner().build_gmpi(base, family)
    assert report.ideal == "(x1^2*y1, x2^3*y1)"
    assert any("no está generado en grado 2" in note for note in report.notes)


def test_build_gmpi_needs_a_family():
    base = parse_base_text(BASE_TEXT)
    with pytest.raises(InvalidArgumentError):
        ProgramRunner().build_gmpi(base)


def test_linquot_certificate_carries_r_and_pd():
    report = run("ring x[3];\nM := (x1, x2, x3);\nlinquot M;")
    cert = report.certificate
    assert cert.r_values == [1, 2]
    assert (cert.r, cert.pd) == (2, 3)
    assert {"r", "pd"} <= set(report.model_dump()["certificate"])


def test_is_normal_failure_carries_lambdas():
    first = run("ring x[2];\nI := (x1^2, x2^2);\nis-normal I --power 2;")
    assert first.witness.power == 1
    assert first.certificate.power == 1
    assert first.certificate.members[0].lambdas == ["1/2", "1/2"]

    ctx = VariableContext.of(("x", 3), ("y", 3))
    source = "ring x[3], y[3];\nL := sqV(y,3) + sqV(x,2)*sqV(y,1);\nis-normal L --power 2;"
    report = run(source)
    assert report.value is False
    assert report.certificate.power == 2
    (member,) = report.certificate.members
    assert member.monomial == report.witness.u
    square = power(ideal_of(ctx, "sqV(y,3) + sqV(x,2)*sqV(y,1)"), 2)
    lambdas = tuple(Fraction(x) for x in member.lambdas)
    assert NewtonMembership(square, mono(ctx, member.monomial).exponents, True, lambdas).verify()
