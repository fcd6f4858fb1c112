from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrefl.carriers import (Kind, InstancePath, Registry, hom_compose, inherits,
                               instances_equal, projection_chain, syntactic_instances_equal)
from polyrefl.errors import (DomainMismatch, DuplicateName, KindMismatch, KindSemanticsMismatch,
                             NoInstance, OpaqueCarrier, RegistryFrozen, StructureLawViolation)


def fresh():
    r = Registry()
    r.declare_carrier("int", Kind.numDomainType, "integers")
    r.declare_carrier("rat", Kind.numFieldType, "rationals")
    return r


def test_fig1_edges():
    assert inherits(Kind.comUnitRingType, Kind.comRingType)
    assert inherits(Kind.comUnitRingType, Kind.unitRingType)
    assert inherits(Kind.numFieldType, Kind.fieldType)
    assert inherits(Kind.numFieldType, Kind.numDomainType)
    assert inherits(Kind.numDomainType, Kind.zmodType)
    assert inherits(Kind.zmodType, Kind.eqType)
    assert not inherits(Kind.numDomainType, Kind.numFieldType)
    assert not inherits(Kind.fieldType, Kind.numDomainType)
    assert not inherits(Kind.comRingType, Kind.unitRingType)


@given(st.sampled_from(list(Kind)), st.sampled_from(list(Kind)), st.sampled_from(list(Kind)))
def test_inheritance_reflexive_transitive(a, b, c):
    assert inherits(a, a)
    if inherits(a, b) and inherits(b, c):
        assert inherits(a, c)


def test_declare_and_resolve():
    r = fresh()
    p = r.resolve_instance("int", Kind.zmodType)
    assert p.base == "int" and p.final_kind == Kind.zmodType
    assert len(p.projections) >= 1
    assert r.resolve_instance("rat", Kind.fieldType).final_kind == Kind.fieldType
    assert r.resolve_instance("int", Kind.numDomainType).projections == ()


def test_resolve_shortest_chain():
    # numDomain -> comUnitRing -> comRing -> ring -> zmod, each step to a direct parent
    steps = projection_chain(Kind.numDomainType, Kind.zmodType)
    assert steps[-1] == Kind.zmodType
    p = fresh().resolve_instance("int", Kind.zmodType)
    assert len(p.projections) == len(steps)


def test_no_instance_message():
    r = fresh()
    with pytest.raises(NoInstance, match="numDomainType"):
        r.resolve_instance("int", Kind.numFieldType)
    r.declare_carrier("B", Kind.eqType, "integers")
    with pytest.raises(NoInstance, match="Cannot find a declared Z-module on B"):
        r.resolve_instance("B", Kind.zmodType)


def test_duplicate_and_semantics_errors():
    r = fresh()
    with pytest.raises(DuplicateName):
        r.declare_carrier("int", Kind.ringType, "integers")
    with pytest.raises(KindSemanticsMismatch):
        r.declare_carrier("Zf", Kind.fieldType, "integers")
    with pytest.raises(KindSemanticsMismatch):
        r.declare_carrier("F6", Kind.fieldType, "modular 6")
    with pytest.raises(KindSemanticsMismatch):
        r.declare_carrier("F1", Kind.comRingType, "modular 1")
    r.declare_carrier("F97", Kind.fieldType, "modular 97")
    r.declare_carrier("Z6", Kind.comRingType, "modular 6")


def test_instances_equal_aliasing():
    declared = InstancePath("int", Kind.zmodType, ())
    projected = InstancePath("int", Kind.ringType, (Kind.zmodType,))
    assert instances_equal(declared, projected)
    assert not syntactic_instances_equal(declared, projected)
    assert instances_equal(projected, projected)
    assert not instances_equal(declared, InstancePath("rat", Kind.zmodType, ()))


def test_instance_path_validates_steps():
    with pytest.raises(KindMismatch):
        InstancePath("int", Kind.zmodType, (Kind.ringType,))


@settings(max_examples=50)
@given(st.sampled_from(list(Kind)), st.sampled_from(list(Kind)))
def test_resolved_paths_agree_with_any_path(decl, kind):
    steps = projection_chain(decl, kind)
    if steps is None:
        return
    r = Registry()
    sem = "rationals" if inherits(decl, Kind.fieldType) else "integers"
    r.declare_carrier("c", decl, sem)
    resolved = r.resolve_instance("c", kind)
    assert instances_equal(resolved, InstancePath("c", decl, tuple(reversed(steps))))
    assert instances_equal(resolved, InstancePath("c", kind, ()))


def test_declare_hom_law_checks():
    r = fresh()
    h = r.declare_hom("embed_ZQ", "rmorphism", "int", "rat", lambda n: Fraction(n))
    assert h(3) == Fraction(3)
    d = r.declare_hom("double", "additive", "int", "int", lambda n: 2 * n)
    assert d(4) == 8
    with pytest.raises(StructureLawViolation):
        r.declare_hom("square", "additive", "int", "int", lambda n: n * n)
    with pytest.raises(StructureLawViolation):
        r.declare_hom("dbl_ring", "rmorphism", "int", "int", lambda n: 2 * n)
    with pytest.raises(DuplicateName):
        r.declare_hom("double", "additive", "int", "int", lambda n: 2 * n)
    r.declare_carrier("B", Kind.eqType, "integers")
    with pytest.raises(KindMismatch):
        r.declare_hom("b", "additive", "B", "int", lambda n: n)


def test_hom_compose():
    r = fresh()
    e = r.declare_hom("embed_ZQ", "rmorphism", "int", "rat", lambda n: Fraction(n))
    d = r.declare_hom("double", "additive", "int", "int", lambda n: 2 * n)
    c = hom_compose(e, d)
    assert c(3) == Fraction(6, 1)
    assert c.kind == "additive" and c.dom == "int" and c.cod == "rat"
    assert c.components == ("embed_ZQ", "double")
    ident = r.identity_hom("rat")
    for x in range(-5, 6):
        assert hom_compose(ident, e)(x) == e(x)
        assert hom_compose(e, r.identity_hom("int"))(x) == e(x)
    with pytest.raises(DomainMismatch):
        hom_compose(d, e)


@given(st.integers(-10 ** 6, 10 ** 6))
def test_hom_compose_associative(x):
    r = fresh()
    d = r.declare_hom("double", "additive", "int", "int", lambda n: 2 * n)
    t = r.declare_hom("triple", "additive", "int", "int", lambda n: 3 * n)
    e = r.declare_hom("embed_ZQ", "rmorphism", "int", "rat", lambda n: Fraction(n))
    assert hom_compose(hom_compose(e, d), t)(x) == hom_compose(e, hom_compose(d, t))(x)


def test_opaque_and_frozen():
    r = fresh()
    r.declare_carrier("V", Kind.zmodType, "opaque")
    h = r.declare_hom("f", "additive", "V", "V", lambda v: v)
    assert h.semantics is None
    with pytest.raises(OpaqueCarrier):
        h(1)
    with pytest.raises(OpaqueCarrier):
        r.domain("V")
    r.freeze()
    with pytest.raises(RegistryFrozen):
        r.declare_carrier("W", Kind.zmodType, "opaque")
