import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrefl.carriers import IntegerDomain, ModularDomain, RationalDomain
from polyrefl.errors import IndexOutOfRange
from polyrefl.fuzz import rand_pexpr
from polyrefl.horner import (FEdiv, FEinv, P0, P1, PEadd, PEc, PEI, PEmul, PEO, PEpow,
                             PEsub, PEX, Pc, Pinj, PX, dense_monomials, field_decide,
                             field_simplify, horner_text, mk_pinj, mk_px, monomial_table,
                             peval, pnorm, poly_eval, pretty, ring_decide, show_poly, to_pexpr)
from polyrefl.oracle import dense_expand

X, Y = PEX(1), PEX(2)
ZZ, QQ, F5, F97 = IntegerDomain(), RationalDomain(), ModularDomain(5), ModularDomain(97)


def test_pnorm_examples():
    assert pnorm(PEO()) == Pc(0)
    assert pnorm(PEsub(X, X)) == Pc(0)
    p = pnorm(PEpow(PEadd(X, Y), 2))
    assert dense_monomials(p, 2) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_smart_constructors_keep_canonical_shape():
    assert mk_pinj(0, Pc(3)) == Pc(3)
    assert mk_pinj(2, Pc(3)) == Pc(3)
    assert mk_pinj(1, mk_pinj(2, PX(P1, 1, P0))) == Pinj(3, PX(P1, 1, P0))
    assert mk_px(P0, 2, Pc(4)) == Pc(4)
    # x^2 * x^3 head merge
    assert mk_px(PX(P1, 2, P0), 3, P0) == PX(P1, 5, P0)


def test_peval_examples():
    assert peval(PEc(7), [], F5) == 2
    assert peval(X, [9], ZZ) == 9
    assert peval(PEpow(PEc(2), 10), [], ZZ) == 1024
    with pytest.raises(IndexOutOfRange):
        peval(PEX(2), [1], ZZ)
    with pytest.raises(IndexOutOfRange):
        poly_eval(pnorm(PEX(3)), [1], ZZ)


def test_ring_decide_examples():
    lhs = PEpow(PEadd(X, Y), 2)
    rhs = PEadd(PEadd(PEpow(X, 2), PEmul(PEc(2), PEmul(X, Y))), PEpow(Y, 2))
    assert ring_decide(lhs, rhs)
    assert ring_decide(PEmul(X, Y), PEmul(Y, X))
    assert not ring_decide(PEpow(X, 2), X)
    assert peval(PEpow(X, 2), [2], ZZ) != peval(X, [2], ZZ)


def test_printing():
    p = pnorm(PEadd(PEpow(X, 2), PEmul(PEc(2), Y)))
    assert horner_text(p) == "(1)*x1^2 + (2)*x2 + 0"
    assert "x1^2" in monomial_table(p) and "x2" in monomial_table(p)
    assert show_poly(pnorm(X)) == "PX (Pc 1) 1 (Pc 0)"
    assert pretty(PEadd(PEmul(PEI(), X), PEc(-1)), lambda i: "n") == "1 * n - 1"
    assert pretty(FEdiv(X, PEsub(X, PEI()))) == "x1 / (x1 - 1)"


def test_field_simplify_examples():
    f = field_simplify(FEdiv(X, Y))
    assert (f.num, f.den) == (pnorm(X), pnorm(Y))
    assert [c.poly for c in f.conds] == [pnorm(Y)]
    f = field_simplify(FEinv(FEinv(X)))
    assert (f.num, f.den) == (pnorm(X), P1)
    assert [c.poly for c in f.conds] == [pnorm(X)]
    for x in (1, 2, 3, -5):
        q = Fraction(x)
        assert 1 / (1 / q) == peval(f.num_expr, [q], QQ)
    e = PEmul(X, PEadd(Y, PEI()))
    f = field_simplify(e)
    assert (f.num, f.den, f.conds) == (pnorm(e), P1, [])


def test_field_decide_examples():
    n = X
    lhs = FEdiv(PEsub(PEpow(n, 2), PEI()), PEsub(n, PEI()))
    rhs = PEadd(n, PEI())
    d = field_decide(lhs, rhs)
    assert d.equal and [c.poly for c in d.conds] == [pnorm(PEsub(n, PEI()))]
    d = field_decide(FEdiv(X, Y), FEdiv(X, Y))
    assert d.equal and [c.poly for c in d.conds] == [pnorm(Y)]
    d = field_decide(FEdiv(PEI(), X), X)
    assert not d.equal and [c.poly for c in d.conds] == [pnorm(X)]
    assert peval(FEdiv(PEI(), X), [Fraction(2)], QQ) != Fraction(2)


def test_conditions_dedup_by_normal_form_and_constants_suppressed():
    a = FEinv(PEadd(X, PEI()))
    b = FEinv(PEadd(PEI(), X))
    d = field_decide(PEadd(a, b), PEmul(PEc(2), a))
    assert d.equal and len(d.conds) == 1
    d = field_decide(FEdiv(X, PEc(2)), PEmul(X, FEinv(PEc(2))))
    assert d.equal and d.conds == [] and len(d.suppressed) == 1


def test_field_denominators_share_factors():
    # x/(x+1) + 1/(x+1) = 1 only via the common factor
    den = PEadd(X, PEI())
    d = field_decide(PEadd(FEdiv(X, den), FEdiv(PEI(), den)), PEI())
    assert d.equal


def test_large_expression_no_stack_overflow():
    rng = random.Random(5)
    terms = [PEmul(PEc(rng.randint(1, 10 ** 13)), PEX(rng.randint(1, 4))) for _ in range(40000)]
    e = terms[0]
    for t in terms[1:]:
        e = PEadd(e, t)  # left comb, depth 40000
    p = pnorm(e)
    assert dense_monomials(p, 4) == dense_expand(e, 4)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_oracle_and_idempotence(seed):
    rng = random.Random(seed)
    e = rand_pexpr(rng, nvars=4, max_deg=12, size=rng.randint(1, 25))
    p = pnorm(e)
    assert dense_monomials(p, 4) == dense_expand(e, 4)
    assert pnorm(to_pexpr(p)) == p
    for dom in (ZZ, F97):
        vals = [dom.coerce(rng.randint(-50, 50)) for _ in range(4)]
        assert poly_eval(p, vals, dom) == peval(e, vals, dom)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_field_soundness(seed):
    rng = random.Random(seed)

    def rf(size):
        if size <= 1:
            return rng.choice([X, Y, PEc(rng.randint(-3, 3)), PEI()])
        k = rng.randint(1, size - 1)
        op = rng.choice([PEadd, PEsub, PEmul, FEdiv, "inv"])
        if op == "inv":
            return FEinv(rf(size - 1))
        return op(rf(k), rf(size - k))

    lhs = rf(rng.randint(1, 8))
    rhs = lhs if rng.random() < 0.5 else rf(rng.randint(1, 8))
    d = field_decide(lhs, rhs)
    if not d.equal:
        return
    checked = 0
    for _ in range(100):
        vals = [Fraction(rng.randint(-30, 30), rng.randint(1, 5)) for _ in range(2)]
        if any(peval(c.expr, vals, QQ) == 0 for c in d.conds):
            continue
        checked += 1
        assert peval(lhs, vals, QQ) == peval(rhs, vals, QQ)
