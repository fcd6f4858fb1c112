import pytest
from hypothesis import given, settings, strategies as st

from polyrefl import instances_equal, load_theory
from polyrefl.errors import ElaborationError, GoalSyntaxError
from polyrefl.reify import NOINSTANCE_S, PROVED_S, REFUTED_S, reify_goal, solve
from polyrefl.surface import parse, surface_eval

ALIAS = "((x : int@ringType) + y) - z = (x + y : int@zmodType) - z : int [zmodule]"


def test_parse_error_position(reg):
    with pytest.raises(GoalSyntaxError) as ei:
        parse("x + = 1 : int [ring]", reg)
    assert ei.value.position == 4
    assert "NUM" in ei.value.expected and "IDENT" in ei.value.expected


def test_parse_unknown_carrier(reg):
    with pytest.raises(Exception):
        parse("x = x : nope [ring]", reg)


def test_operator_instances_agree_up_to_projection(reg):
    g = parse("x + 1 = 1 + x : int [ring]", reg)
    assert instances_equal(g.lhs.instance, g.rhs.instance)


def test_aliased_instances_fully_reified(reg):
    g = parse(ALIAS, reg)
    q, _, _ = reify_goal(g, reg)
    assert q.operator_atoms == 0
    assert len(q.vm) == 3
    assert solve(g, reg).status == PROVED_S


def test_syntactic_matcher_shows_the_failure(reg):
    q, _, _ = reify_goal(parse(ALIAS, reg), reg, matcher="syntactic")
    assert q.operator_atoms >= 1
    assert q.trace[0].outcome == "instance-miss"


def test_cut_semantics(reg):
    q, _, _ = reify_goal(parse(ALIAS, reg), reg)
    fired = set()
    for e in q.trace:
        # once a node's rule fires, no later rule is tried for that node
        assert e.node not in fired
        if e.outcome in ("fire", "variable"):
            fired.add(e.node)


def test_varmap_shared_between_sides(reg):
    q, (_, pl), (_, pr) = reify_goal(parse("y + z = z : int [ring]", reg), reg)
    assert [a.term.value for a in q.vm] == ["y", "z"]
    assert pr.index == 2


def test_reification_deterministic(reg):
    text = "(a + b) * (c - a) = c * b - a ^+ 2 : rat [ring]"
    a = solve(parse(text, reg), reg, record_trace=True)
    b = solve(parse(text, reg), reg, record_trace=True)
    assert a.poly == b.poly and a.normal_forms == b.normal_forms
    assert a.rule_trace == b.rule_trace


def test_additive_hom_quoted(freg):
    v = solve(parse("double_q(x + y) = double_q(x) + double_q(y) : rat [zmodule]", freg), freg)
    assert v.status == PROVED_S
    assert v.atom_names() == ["double_q(x)", "double_q(y)"]
    v = solve(parse("double_q(x + y) = double_q(x) + double_q(y) : rat [ring]", freg), freg)
    assert v.status == PROVED_S


def test_missing_instance_reported():
    reg = load_theory("carrier B : eqType = opaque\n").freeze()
    v = solve(parse("x = x : B [zmodule]", reg), reg)
    assert v.status == NOINSTANCE_S
    assert v.message == "Cannot find a declared Z-module on B (declared eqType)"


def test_ring_goal_on_zmodule_carrier(reg):
    reg2 = load_theory("carrier V : zmodType = integers\n").freeze()
    assert solve(parse("x + y = y + x : V [zmodule]", reg2), reg2).status == PROVED_S
    assert solve(parse("x + y = y + x : V [ring]", reg2), reg2).status == NOINSTANCE_S


def test_refuted_reports_difference(reg):
    v = solve(parse("x * y = y * x + 1 : rat [ring]", reg), reg)
    assert v.status == REFUTED_S
    assert v.difference == "-1"


def test_ring_mode_inverse_is_atom(reg):
    v = solve(parse("x / y + x / y = 2 * x * y^-1 : rat [ring]", reg), reg)
    assert v.status == PROVED_S


def test_field_mode_requires_field(reg):
    assert solve(parse("x / y = x / y : int [field]", reg), reg).status == NOINSTANCE_S


def test_mixed_carriers_rejected(reg):
    with pytest.raises(ElaborationError):
        parse("(x : int) + (y : rat) = y : rat [ring]", reg)


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 9))
def test_surface_eval_matches_verdict(reg, a, b, k):
    g = parse(f"(x + {k}) * (y - x) = x * y + {k} * y - x ^+ 2 - {k} * x : int [ring]", reg)
    env = {"x": a, "y": b}
    assert surface_eval(g.lhs, env, reg) == surface_eval(g.rhs, env, reg)
    assert solve(g, reg).status == PROVED_S


CHAR_THEORY = "carrier K : fieldType = opaque\ncarrier F2 : fieldType = modular 2\ncarrier F97 : fieldType = modular 97\n"


def test_constant_denominator_zero_in_characteristic():
    reg = load_theory(CHAR_THEORY).freeze()
    v = solve(parse("97 / 97 = 1 : F97 [field]", reg), reg)
    assert v.status == "ProvedWithResiduals"
    assert [r.ring for r in v.residuals] == ["97 != 0"]
    assert solve(parse("3 / 3 = 1 : F97 [field]", reg), reg).status == PROVED_S


def test_unknown_characteristic_keeps_constants():
    reg = load_theory(CHAR_THEORY).freeze()
    v = solve(parse("2 / 2 = 1 : K [field]", reg), reg)
    assert [r.ring for r in v.residuals] == ["2 != 0"]
    assert solve(parse("1 / 1 = 1 : K [field]", reg), reg).status == PROVED_S


def test_coefficients_compared_modulo_characteristic():
    reg = load_theory(CHAR_THEORY).freeze()
    assert solve(parse("x * 97 = 0 : F97 [ring]", reg), reg).status == PROVED_S
    assert solve(parse("x + x = 0 : F2 [zmodule]", reg), reg).status == PROVED_S
    assert solve(parse("x + x = 0 : F2 [ring]", reg), reg).status == PROVED_S
    # a functional identity that is not a polynomial identity stays refuted
    assert solve(parse("x * x = x : F2 [ring]", reg), reg).status == REFUTED_S


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-200, 200), min_size=4, max_size=4), st.integers(0, 96), st.integers(0, 96))
def test_modular_proofs_hold_pointwise(reg, ks, a, b):
    k0, k1, k2, k3 = ks
    text = f"({k0}) * x * y + ({k1}) * x + ({k2}) = ({k3}) * y * x + ({k1 + 97 * k3}) * x + ({k2 - k0 * 97}) : F97 [ring]"
    g = parse(text, reg)
    v = solve(g, reg)
    env = {"x": a, "y": b}
    holds = surface_eval(g.lhs, env, reg) == surface_eval(g.rhs, env, reg)
    if v.status == PROVED_S:
        assert holds
    assert (v.status == PROVED_S) == ((k0 - k3) % 97 == 0)
