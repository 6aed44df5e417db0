import pytest

from gmpideals.core.errors import DslSemanticError, DslSyntaxError, IncompleteFamilyError
from gmpideals.parsers.family_file import load_base, load_family, parse_base_text, parse_family_text
from gmpideals.services.gmpi import build, builtin_family
from gmpideals.services.ideal_algebra import format_ideal
from gmpideals.test.conftest import ideal_of

BASE_TEXT = "ring x[1], y[1];\n# escalera de tres pasos\nI := gens{x1*y1^2, x1^2*y1};\n"


@pytest.fixture
def base():
    return parse_base_text(BASE_TEXT)


def test_base_is_last_binding():
    base = parse_base_text("ring x[1], y[1];\nA := (x1);\nI := A*(y1);\n")
    assert format_ideal(base.ideal) == "(x1*y1)"


def test_default_shorthand_matches_builtin(base):
    family = parse_family_text("# todo integrado\n\n@sqV   # comentario\n", base, (3, 3))
    assert family.table == builtin_family("squarefree_veronese", base, (3, 3)).table


def test_explicit_entries(base):
    text = "x 1 (x1)\nx 2 (x1*x2)\ny 1 (y1)\ny 2 gens{y1*y2}\n"
    L = build(base, parse_family_text(text, base, (2, 2)))
    assert format_ideal(L) == "(x1*x2*y1, x1*y1*y2)"


def test_explicit_lines_override_default(base):
    family = parse_family_text("@V\nx 2 (x1*x2)\n", base, (2, 2))
    assert family.table[(0, 2)] == ideal_of(family.target, "(x1*x2)")
    assert family.table[(1, 2)] == ideal_of(family.target, "V(y,2)")


def test_shorthand_for_a_single_entry(base):
    family = parse_family_text("x 1 @sqV\nx 2 @V\ny 1 (y1)\ny 2 (y1^2)\n", base, (2, 2))
    assert family.table[(0, 1)] == ideal_of(family.target, "sqV(x,1)")
    assert family.table[(0, 2)] == ideal_of(family.target, "V(x,2)")
    assert len(family.table) == 4


def test_missing_entry_is_reported_on_build(base):
    family = parse_family_text("x 1 (x1)\nx 2 (x1*x2)\ny 1 (y1)\n", base, (2, 2))
    with pytest.raises(IncompleteFamilyError):
        build(base, family)


def test_syntax_error_points_into_the_file(base):
    with pytest.raises(DslSyntaxError) as exc:
        parse_family_text("x 1 (x1)\ny 2 sqV(y 2)\n", base, (2, 2))
    assert (exc.value.line, exc.value.column) == (2, 11)
    assert exc.value.expected == (",",)


def test_malformed_lines(base):
    with pytest.raises(DslSyntaxError) as exc:
        parse_family_text("x (x1)\n", base, (2, 2))
    assert exc.value.line == 1
    with pytest.raises(DslSyntaxError):
        parse_family_text("@sqV\n@V\n", base, (2, 2))
    with pytest.raises(DslSemanticError):
        parse_family_text("z 1 (x1)\n", base, (2, 2))
    with pytest.raises(DslSemanticError):
        parse_family_text("x 1 (x1)\nx 1 (x2)\n", base, (2, 2))


def test_load_from_files(tmp_path):
    base_path = tmp_path / "base.gmp"
    family_path = tmp_path / "familia.txt"
    base_path.write_text(BASE_TEXT, encoding="utf-8")
    family_path.write_text("@sqV\n", encoding="utf-8")
    base = load_base(base_path)
    L = build(base, load_family(family_path, base, (3, 3)))
    assert len(L) == 18
