import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrefl.carriers import hom_compose
from polyrefl.checks import directed_pushdown
from polyrefl.errors import DomainMismatch, OpaqueCarrier
from polyrefl.fuzz import FUZZ_CARRIERS, rand_m, rand_r, rand_zm
from polyrefl.horner import (FEinv, PEadd, PEc, PEI, PEmul, PEopp, PEpow, PEX, peval)
from polyrefl.preprocess import (MAdd, MMorph, MO, MOpp, MSub, MX, NC, NExp, NSucc, NX,
                                 R1, RAdd, RExpNegz, RInv, RMorph, RMul, RMulz, RNegz, RPosz,
                                 RX, RZExp, Atom, check_carriers, het_eval, identity, m_eval,
                                 m_lower, m_norm, m_to_ag, n_norm, f_norm, r_norm, show_het,
                                 varmap_values)
from polyrefl.zmod import VarMap, ag_eval, zmod_ops


def test_m_eval_examples(freg):
    assert m_eval(MX("int", 5), freg) == 5
    assert m_eval(MMorph("int", "int", freg.hom("triple_i"), MX("int", 3)), freg) == 9
    assert m_eval(MSub("int", MX("int", 7), MX("int", 2)), freg) == 5


def test_m_norm_laws(freg):
    t, e = freg.hom("triple_i"), freg.hom("embed_ZQ")
    inner = MAdd("int", MX("int", 2), MOpp("int", MX("int", 9)))
    # pushing e through MMorph(t, .) equals using e . t as accumulator
    assert m_norm(e, MMorph("int", "int", t, inner), freg) == m_norm(hom_compose(e, t), inner, freg)
    a, b = MX("int", 4), MX("int", 10)
    assert m_norm(e, MSub("int", a, b), freg) == m_norm(e, a, freg) + -m_norm(e, b, freg)
    with pytest.raises(DomainMismatch):
        m_norm(e, MX("rat", Fraction(1)), freg)


def test_m_lower_removes_homs_and_sub(freg):
    t, e = freg.hom("triple_i"), freg.hom("embed_ZQ")
    low = m_lower(MMorph("int", "rat", e, MMorph("int", "int", t, MSub("int", MX("int", 1), MO("int")))), freg)
    assert low == MAdd("rat", MX("rat", Atom(("embed_ZQ", "triple_i"), "int", 1)), MOpp("rat", MO("rat")))


def test_n_norm_examples():
    vm = VarMap()
    assert n_norm(NSucc(NX("n")), vm) == PEadd(PEI(), PEX(1))
    assert n_norm(NC(0), vm) == PEc(0)
    assert n_norm(NExp(NX("n"), 3), vm) == PEpow(PEX(1), 3)
    assert len(vm) == 1


def test_r_norm_clauses(freg):
    vm = VarMap()
    assert r_norm(RZExp(RX("Z", 3), -2), vm, freg) == PEc(0)
    assert r_norm(RNegz(NC(0)), vm, freg) == PEopp(PEadd(PEI(), PEc(0)))
    assert peval(PEopp(PEadd(PEI(), PEc(0))), [], freg.domain("int")) == -1


def test_r_norm_intmul_pushdown(freg):
    # f(x *~ (n * m)) lowers to f(x) * (n * m) with n, m embedded integers
    f = freg.hom("embed_ZQ")
    e = RMorph("int", "rat", f, RMulz("int", RX("int", "x"), RMul("int", RX("int", "n"), RX("int", "m"))))
    vm = VarMap()
    p = r_norm(e, vm, freg)
    assert p == PEmul(PEX(1), PEmul(PEX(2), PEX(3)))
    assert [a.homs for a in vm] == [("intr",)] * 3


def test_ring_mode_inverse_atoms_are_stable(reg):
    vm = VarMap()
    inv = RInv("rat", RAdd("rat", RX("rat", "x"), R1("rat")))
    p = r_norm(RAdd("rat", inv, inv), vm, reg)
    assert p == PEadd(PEX(1), PEX(1)) and len(vm) == 1
    assert vm[0].term == inv


def test_f_norm_clauses(reg):
    vm = VarMap()
    assert f_norm(RInv("rat", RX("rat", "x")), vm, reg) == FEinv(PEX(1))
    x = RX("rat", "x")
    assert f_norm(RExpNegz("rat", x, 1), vm, reg) == FEinv(PEpow(PEX(1), 2))


def test_f_norm_negative_z_exponent(freg):
    zq = freg.hom("ZtoQ")
    assert f_norm(RMorph("Z", "rat", zq, RZExp(RX("Z", 2), -2)), VarMap(), freg) == PEc(0)


def test_embedding_coherence(reg):
    # 6%:R and (Posz 6)%:~R both lower to the same constant
    a = r_norm(RMulz("rat", R1("rat"), RPosz(NC(6))), VarMap(), reg)
    assert a == PEmul(PEI(), PEc(6))


def test_directed_cases(freg):
    for e in directed_pushdown(freg):
        check_carriers(e, freg)
        v = het_eval(e, freg)
        c = e.carrier
        vm = VarMap()
        if type(e).__name__.startswith("M"):
            assert m_norm(identity(freg, c), e, freg) == v
        else:
            assert peval(r_norm(e, vm, freg), varmap_values(vm, freg, c), freg.domain(c)) == v
    assert het_eval(RNegz(NC(4)), freg) == -5
    assert het_eval(RZExp(RX("Z", 3), -1), freg) == 0


def test_check_carriers_rejects_mismatch(freg):
    with pytest.raises(DomainMismatch):
        check_carriers(MAdd("int", MX("int", 1), MX("rat", 2)), freg)
    with pytest.raises(DomainMismatch):
        check_carriers(MMorph("rat", "rat", freg.hom("embed_ZQ"), MX("int", 1)), freg)


def test_opaque_leaf_evaluation():
    from polyrefl.theory import load_theory
    r = load_theory("carrier V : zmodType = opaque\n")
    with pytest.raises(OpaqueCarrier):
        m_eval(MAdd("V", MX("V", 1), MX("V", 2)), r)


def test_show_het():
    s = show_het(MAdd("int", MX("int", 1), MO("int")))
    assert s.splitlines() == ["MAdd : int", "  MX 1 : int", "  MO : int"]


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from(FUZZ_CARRIERS))
def test_pushdown_preserves_value(freg, seed, c):
    rng = random.Random(seed)
    d = freg.domain(c)
    e = rand_r(rng, freg, c, rng.randint(1, 14))
    assert check_carriers(e, freg) == c
    v = het_eval(e, freg)
    for fn in (r_norm, f_norm) if c in ("rat", "F97") else (r_norm,):
        vm = VarMap()
        assert peval(fn(e, vm, freg), varmap_values(vm, freg, c), d) == v
    m = rand_m(rng, freg, c, rng.randint(1, 10))
    check_carriers(m, freg)
    assert m_norm(identity(freg, c), m, freg) == het_eval(m, freg)
    vm = VarMap()
    ag = m_to_ag(m, vm, freg)
    assert ag_eval(*zmod_ops(d), varmap_values(vm, freg, c), ag) == het_eval(m, freg)
    z = rand_zm(rng, freg, c, rng.randint(1, 8))
    check_carriers(z, freg)
