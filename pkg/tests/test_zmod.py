import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from polyrefl.carriers import IntegerDomain, ModularDomain
from polyrefl.zmod import (AGAdd, AGO, AGOpp, AGX, VarMap, ag_decide, ag_eval, ag_norm,
                           ag_subst, show, zmod_ops)

Z = zmod_ops(IntegerDomain())
E1 = AGAdd(AGAdd(AGX(0), AGOpp(AGX(1))), AGX(0))
E2 = AGAdd(AGOpp(AGX(1)), AGAdd(AGX(0), AGX(0)))


def test_ag_eval_examples():
    assert ag_eval(*Z, [7], AGX(0)) == 7
    assert ag_eval(*Z, [3, 5], E1) == 1
    assert ag_eval(*Z, [3], AGX(7)) == 0


def test_ag_norm_examples():
    assert list(ag_norm(AGAdd(AGX(0), AGOpp(AGX(1))))) == [1, -1]
    assert list(ag_norm(AGO())) == []
    assert list(ag_norm(AGAdd(E1, AGOpp(E2)))) == [0, 0]
    assert list(ag_norm(E1)) == [2, -1]


def test_ag_norm_length_is_max_index_plus_one():
    assert len(ag_norm(AGAdd(AGX(4), AGOpp(AGX(4))))) == 5


def test_ag_subst_examples():
    assert ag_subst(*Z, [4, 1], [1, -2]) == 2
    assert ag_subst(*Z, [4, 1], []) == 0
    assert ag_subst(*Z, [4, 1], [0, 0]) == 0


def test_ag_decide_examples():
    assert ag_decide(E1, E2)
    assert not ag_decide(AGX(0), AGX(1))
    assert ag_decide(AGAdd(AGX(0), AGX(1)), AGAdd(AGX(1), AGX(0)))


def test_commutativity_checked_over_z5_exhaustively():
    ops = zmod_ops(ModularDomain(5))
    a, b = AGAdd(AGX(0), AGX(1)), AGAdd(AGX(1), AGX(0))
    for x, y in itertools.product(range(5), repeat=2):
        assert ag_eval(*ops, [x, y], a) == ag_eval(*ops, [x, y], b)


def test_intro_equation_normal_form():
    # (a - b) - (b - a) is 2a - 2b, not the zero sum
    a, b = AGX(0), AGX(1)
    e = AGAdd(AGAdd(a, AGOpp(b)), AGOpp(AGAdd(b, AGOpp(a))))
    assert list(ag_norm(e)) == [2, -2]


def test_show_matches_constructor_syntax():
    assert show(E1) == "AGAdd (AGAdd (AGX 0) (AGOpp (AGX 1))) (AGX 0)"
    assert show(E2) == "AGAdd (AGOpp (AGX 1)) (AGAdd (AGX 0) (AGX 0))"


def test_varmap_mem():
    vm = VarMap()
    assert [vm.mem(t) for t in ("y", "z", "y", "w", "z")] == [0, 1, 0, 2, 1]
    assert list(vm) == ["y", "z", "w"]
    vm2 = VarMap(["y", "z"])
    assert vm2.mem("z") == 1


def test_deep_expression_has_no_recursion_limit():
    e = AGX(0)
    for i in range(50000):
        e = AGAdd(e, AGOpp(AGX(i % 3)))
    assert len(ag_norm(e)) == 3
    assert ag_eval(*Z, [1, 2, 3], e) == ag_subst(*Z, [1, 2, 3], ag_norm(e))


def agexpr(nvars):
    leaf = st.one_of(st.just(AGO()), st.integers(0, nvars - 1).map(AGX))
    return st.recursive(leaf, lambda k: st.one_of(k.map(AGOpp), st.tuples(k, k).map(lambda p: AGAdd(*p))),
                        max_leaves=25)


@settings(max_examples=300)
@given(agexpr(5), st.lists(st.integers(-10 ** 9, 10 ** 9), min_size=5, max_size=5),
       st.sampled_from([None, 2, 5, 97]))
def test_norm_subst_law(e, vals, p):
    dom = IntegerDomain() if p is None else ModularDomain(p)
    ops = zmod_ops(dom)
    vals = [dom.coerce(v) for v in vals]
    assert ag_subst(*ops, vals, ag_norm(e)) == ag_eval(*ops, vals, e)


@settings(max_examples=200)
@given(agexpr(3), agexpr(3))
def test_decide_sound_and_complete(e1, e2):
    if ag_decide(e1, e2):
        for vals in itertools.product(range(-2, 3), repeat=3):
            assert ag_eval(*Z, list(vals), e1) == ag_eval(*Z, list(vals), e2)
    else:
        # a nonzero linear form is nonzero at some unit vector
        assert any(ag_eval(*Z, list(v), e1) != ag_eval(*Z, list(v), e2)
                   for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1]))
