from fractions import Fraction

import pytest

from skewring.builtins import DATA_DIR, NAMES, builtin_spec, builtin_text
from skewring.instfile import InstanceFileError, load, parse, serialize
from skewring.suite import Instance, InstanceError

F2C2 = """\
NAME f2_c2
FIELD 2
ALGEBRA 1
  LABELS 1
  UNIT 1
  C 0 0 0 1
GROUP 2
  ROW 0 1
  ROW 1 0
SUBGROUP 0
MODULE k left RG 1
  R 0 : 1
  G 1 : 1
END
"""


def _replace(text, old, new):
    assert old in text
    return text.replace(old, new)


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip_text(name):
    text = builtin_text(name)
    assert serialize(parse(text)) == text


@pytest.mark.parametrize("name", NAMES)
def test_shipped_files_match_builders(name):
    path = DATA_DIR / f"{name}.inst"
    assert path.read_text(encoding="utf-8") == builtin_text(name)
    spec = load(path)
    assert spec.name == name


@pytest.mark.parametrize("name", ["quiver_swap_f2", "q_c2", "f2_s3_c3", "smash_f3_dual_graded", "f4_frobenius"])
def test_rebuilt_instance_entrywise_identical(name):
    a = Instance(builtin_spec(name))
    b = Instance(parse(serialize(builtin_spec(name))))
    assert (a.RG.c == b.RG.c).all() and (a.RH.c == b.RH.c).all()
    assert a.skew.action.auto == b.skew.action.auto
    assert set(a.declared) == set(b.declared)
    for k, M in a.declared.items():
        assert M.equals(b.declared[k])


def test_comments_and_blank_lines():
    text = "# leading comment\n\n" + _replace(F2C2, "FIELD 2", "FIELD 2   # the prime")
    assert parse(text).field.p == 2


def test_scalars_reduced_mod_p():
    text = _replace(F2C2, "G 1 : 1", "G 1 : 3")
    spec = parse(text)
    assert spec.modules[0].group_actions[1].tolist() == [[1]]
    Instance(spec)


def test_rational_scalars():
    text = _replace(_replace(F2C2, "FIELD 2", "FIELD Q"), "C 0 0 0 1", "C 0 0 0 2/2")
    spec = parse(text)
    assert spec.consts[(0, 0, 0)] == Fraction(1)
    with pytest.raises(InstanceFileError):
        parse(_replace(F2C2, "C 0 0 0 1", "C 0 0 0 1/2"))


@pytest.mark.parametrize("old,new,line,col", [
    ("C 0 0 0 1", "C 0 0 x 1", 6, 9),
    ("ROW 1 0", "ROW 1", 9, 7),
    ("FIELD 2", "FIELD 4", 2, 7),
    ("MODULE k left RG 1", "MODULE k middle RG 1", 11, 10),
])
def test_located_errors(old, new, line, col):
    with pytest.raises(InstanceFileError) as exc:
        parse(_replace(F2C2, old, new), source="bad.inst")
    e = exc.value
    assert e.line == line
    assert e.column == col
    assert str(e).startswith(f"bad.inst:{line}:{col}:")


def test_missing_sections():
    with pytest.raises(InstanceFileError, match="GROUP"):
        parse("FIELD 2\nALGEBRA 1\n LABELS 1\n UNIT 1\n C 0 0 0 1\nSUBGROUP 0\nEND\n")


def test_duplicate_module_rejected():
    text = _replace(F2C2, "END", "MODULE k left RG 1\n  R 0 : 1\nEND")
    with pytest.raises(InstanceFileError, match="duplicate"):
        parse(text)


def test_constructor_errors_forwarded():
    # a non-associative table parses but is rejected on construction
    bad = _replace(F2C2, "G 1 : 1", "G 1 : 0")
    with pytest.raises((InstanceError, ValueError)):
        Instance(parse(bad))
    with pytest.raises(InstanceError):
        Instance(parse(_replace(F2C2, "ROW 1 0", "ROW 1 1")))


def test_module_group_action_closure():
    # only the generator of C3 is given; the square is filled in
    spec = builtin_spec("f3_c3")
    decl = spec.modules[0]
    decl.group_actions = {1: decl.group_actions[1]}
    inst = Instance(spec)
    assert inst.declared["k"].dim == 1
