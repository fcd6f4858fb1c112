import pytest

from polyrefl import load_theory
from polyrefl.errors import DuplicateName, GoalSyntaxError, StructureLawViolation
from polyrefl.theory import DEFAULT_THEORY, default_registry


def test_default_theory():
    reg = default_registry()
    assert set(reg.carriers) == {"int", "rat", "Z", "F97"}
    assert set(reg.homs) == {"embed_ZQ"}


def test_comments_and_blank_lines():
    reg = load_theory("# header\n\ncarrier int : numDomainType = integers  # trailing\n")
    assert "int" in reg.carriers


def test_unknown_statement_position():
    with pytest.raises(GoalSyntaxError) as ei:
        load_theory("carrier int : numDomainType = integers\nfoo bar\n")
    assert (ei.value.line, ei.value.position) == (2, 0)


def test_unknown_hom_function_position():
    with pytest.raises(GoalSyntaxError) as ei:
        load_theory(DEFAULT_THEORY + "hom h : additive int -> int = frob 3\n")
    assert (ei.value.line, ei.value.position) == (6, 30)


def test_duplicate_carrier():
    with pytest.raises(DuplicateName):
        load_theory(DEFAULT_THEORY + "carrier int : ringType = integers\n")


def test_law_violation_on_load():
    with pytest.raises(StructureLawViolation):
        load_theory(DEFAULT_THEORY + "hom sq : rmorphism int -> int = scale 2\n")
