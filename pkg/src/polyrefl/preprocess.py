"""Heterogeneous preprocessing syntax and homomorphism pushdown.

The trees here are indexed by carrier names.  ``MExpr`` covers Z-modules;
``RExpr``/``ZMExpr`` cover rings, their additive parts and the binary-integer
constructors; ``NExpr`` covers natural-number arguments (multipliers,
exponents, ``n%:R``).  Leaves carry opaque value handles.

Pushdown walks a tree with a homomorphism accumulator ``f``.  At a morphism
node the accumulator is composed (``f \\o g``) and the node disappears; at a
leaf the handle becomes a variable keyed by :class:`Atom`, the pair of the
accumulated hom and the raw handle.  The accumulator is never applied to a
value during lowering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ._tree import Node, fold
from .carriers import (INT_EMBED, NAT_EMBED, RMORPHISM, HomRef, Kind,
                       Registry, hom_compose)
from .errors import DomainMismatch
from .horner import (FEinv, PEadd, PEc, PEI, PEmul, PEO, PEopp, PEpow, PEsub,
                     PEX)
from .zmod import AGAdd, AGO, AGOpp, AGX

NAT = "nat"
INT = "int"  # carrier of %:~R arguments, Posz/Negz and *~ multipliers
ZBIN = "Z"   # binary-integer carrier of the RZ* constructors


# MExpr ---------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class MX(Node):
    carrier: str
    x: object


@dataclass(frozen=True, slots=True)
class MO(Node):
    carrier: str


@dataclass(frozen=True, slots=True)
class MOpp(Node):
    carrier: str
    e: Node


@dataclass(frozen=True, slots=True)
class MAdd(Node):
    carrier: str
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class MSub(Node):
    carrier: str
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class MMorph(Node):
    dom: str
    carrier: str
    hom: HomRef
    e: Node


# NExpr ---------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class NC(Node):
    n: int


@dataclass(frozen=True, slots=True)
class NX(Node):
    x: object


@dataclass(frozen=True, slots=True)
class NAdd(Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class NSucc(Node):
    e: Node


@dataclass(frozen=True, slots=True)
class NMul(Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class NExp(Node):
    e: Node
    n: int


# RExpr ---------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class RX(Node):
    carrier: str
    x: object


@dataclass(frozen=True, slots=True)
class R0(Node):
    carrier: str


@dataclass(frozen=True, slots=True)
class R1(Node):
    carrier: str


@dataclass(frozen=True, slots=True)
class ROpp(Node):
    carrier: str
    e: Node


@dataclass(frozen=True, slots=True)
class RAdd(Node):
    carrier: str
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class RMuln(Node):
    carrier: str
    e: Node
    n: Node  # NExpr


@dataclass(frozen=True, slots=True)
class RMulz(Node):
    carrier: str
    e: Node
    z: Node  # RExpr over int


@dataclass(frozen=True, slots=True)
class RMul(Node):
    carrier: str
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class RExpn(Node):
    carrier: str
    e: Node
    n: int


@dataclass(frozen=True, slots=True)
class RExpPosz(Node):
    carrier: str
    e: Node
    n: int


@dataclass(frozen=True, slots=True)
class RExpNegz(Node):
    """``e ^ Negz n``, that is ``(e ^+ (n + 1))^-1``."""
    carrier: str
    e: Node
    n: int


@dataclass(frozen=True, slots=True)
class RInv(Node):
    carrier: str
    e: Node


@dataclass(frozen=True, slots=True)
class RMorph(Node):
    dom: str
    carrier: str
    hom: HomRef
    e: Node


@dataclass(frozen=True, slots=True)
class RMorphAdd(Node):
    """Additive hom applied to a Z-module expression (``RMorph'``)."""
    dom: str
    carrier: str
    hom: HomRef
    e: Node  # ZMExpr


class _OverZ:
    __slots__ = ()
    carrier = ZBIN


@dataclass(frozen=True, slots=True)
class RZOpp(_OverZ, Node):
    e: Node


@dataclass(frozen=True, slots=True)
class RZAdd(_OverZ, Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class RZSub(_OverZ, Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class RZMul(_OverZ, Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class RZExp(_OverZ, Node):
    e: Node
    z: int


@dataclass(frozen=True, slots=True)
class RZC(_OverZ, Node):
    z: int


class _OverInt:
    __slots__ = ()
    carrier = INT


@dataclass(frozen=True, slots=True)
class RPosz(_OverInt, Node):
    n: Node  # NExpr


@dataclass(frozen=True, slots=True)
class RNegz(_OverInt, Node):
    """``Negz n`` is ``-(n + 1)``."""
    n: Node


# ZMExpr --------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class ZMX(Node):
    carrier: str
    x: object


@dataclass(frozen=True, slots=True)
class ZM0(Node):
    carrier: str


@dataclass(frozen=True, slots=True)
class ZMOpp(Node):
    carrier: str
    e: Node


@dataclass(frozen=True, slots=True)
class ZMAdd(Node):
    carrier: str
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class ZMMuln(Node):
    carrier: str
    e: Node
    n: Node


@dataclass(frozen=True, slots=True)
class ZMMulz(Node):
    carrier: str
    e: Node
    z: Node


@dataclass(frozen=True, slots=True)
class ZMMorph(Node):
    dom: str
    carrier: str
    hom: HomRef
    e: Node


MEXPR = (MX, MO, MOpp, MAdd, MSub, MMorph)
NEXPR = (NC, NX, NAdd, NSucc, NMul, NExp)
REXPR = (RX, R0, ROpp, RZOpp, RAdd, RZAdd, RZSub, RMuln, RMulz, R1, RMul,
         RZMul, RExpn, RExpPosz, RExpNegz, RZExp, RInv, RMorph, RMorphAdd,
         RPosz, RNegz, RZC)
ZMEXPR = (ZMX, ZM0, ZMOpp, ZMAdd, ZMMuln, ZMMulz, ZMMorph)
_LEAVES = (MX, RX, ZMX, NX)
_MORPHS = (MMorph, RMorph, RMorphAdd, ZMMorph)


def carrier_of(e):
    return NAT if type(e) in NEXPR else e.carrier


def het_children(e):
    """Sub-expressions in evaluation order (NExpr arguments included)."""
    t = type(e)
    if t in _LEAVES or t in (MO, R0, R1, ZM0, NC, RZC):
        return ()
    if t in (MAdd, MSub, RAdd, RMul, RZAdd, RZSub, RZMul, ZMAdd, NAdd, NMul):
        return (e.l, e.r)
    if t in (RMuln, ZMMuln):
        return (e.e, e.n)
    if t in (RMulz, ZMMulz):
        return (e.e, e.z)
    if t in (RPosz, RNegz):
        return (e.n,)
    return (e.e,)


# atoms ---------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """Variable-map entry: ``homs`` (outermost first) applied to ``term``.

    ``carrier`` is the carrier the raw term lives in.
    """

    homs: tuple
    carrier: str
    term: object


def _is_integers(reg, carrier):
    if carrier == NAT:
        return False
    c = reg.carriers.get(carrier)
    return c is not None and c.semantics.kind == "integers"


def atom_key(f: HomRef, carrier, term, reg: Registry) -> Atom:
    """Key of ``f(term)``.

    A ring morphism out of the integers is unique, so under an all-rmorphism
    accumulator an integer atom is keyed by the canonical embedding.  That is
    what makes ``n%:~R`` and ``embed(n)`` the same variable.
    """
    if f.kind == RMORPHISM and _is_integers(reg, carrier):
        return Atom(() if f.cod == carrier else (INT_EMBED,), carrier, term)
    return Atom(f.components, carrier, term)


def builtin_hom(which, cod, reg: Registry) -> HomRef:
    c = reg.carrier(cod)
    sem = None if c.domain is None else c.domain.from_int
    dom = NAT if which == NAT_EMBED else INT
    return HomRef(which, RMORPHISM, dom, cod, sem, (which,))


def nat_atom(term) -> Atom:
    return Atom((NAT_EMBED,), NAT, term)


def identity(reg: Registry, carrier) -> HomRef:
    return reg.identity_hom(carrier)


# evaluation ----------------------------------------------------------------

def _value_leaf(x, carrier):
    return x


class NatDomain:
    """Natural numbers, for NExpr evaluation."""

    ops = 0

    def from_int(self, n):
        return n


def het_eval(e, reg: Registry, leaf: Callable = _value_leaf):
    """Direct interpretation of any heterogeneous tree (Meval/Reval/ZMeval/Neval).

    ``leaf(handle, carrier)`` supplies leaf values; by default handles are
    the values themselves.
    """
    def expand(n, _):
        return [(k, None) for k in het_children(n)], None

    def dom_of(c):
        return reg.domain(c)

    def combine(n, _c, _m, r):
        t = type(n)
        if t in _LEAVES:
            return leaf(n.x, carrier_of(n))
        # naturals
        if t is NC:
            return n.n
        if t is NAdd:
            return r[0] + r[1]
        if t is NSucc:
            return r[0] + 1
        if t is NMul:
            return r[0] * r[1]
        if t is NExp:
            return r[0] ** n.n
        d = dom_of(n.carrier)
        if t in (MO, R0, ZM0):
            return d.zero()
        if t is R1:
            return d.one()
        if t in (MOpp, ROpp, RZOpp, ZMOpp):
            return d.neg(r[0])
        if t in (MAdd, RAdd, RZAdd, ZMAdd):
            return d.add(r[0], r[1])
        if t in (MSub, RZSub):
            return d.sub(r[0], r[1])
        if t in (RMul, RZMul):
            return d.mul(r[0], r[1])
        if t in (RMuln, ZMMuln):
            return d.natmul(r[0], r[1])
        if t in (RMulz, ZMMulz):
            return d.intmul(r[0], r[1])
        if t in (RExpn, RExpPosz):
            return d.pow(r[0], n.n)
        if t is RExpNegz:
            return d.inv(d.pow(r[0], n.n + 1))
        if t is RZExp:
            return d.zero() if n.z < 0 else d.pow(r[0], n.z)
        if t is RInv:
            return d.inv(r[0])
        if t in _MORPHS:
            return n.hom(r[0])
        if t is RPosz:
            return d.from_int(r[0])
        if t is RNegz:
            return d.from_int(-(r[0] + 1))
        if t is RZC:
            return d.from_int(n.z)
        raise TypeError(f"not a heterogeneous node: {n!r}")

    return fold(e, None, expand, combine)


m_eval = r_eval = zm_eval = n_eval = het_eval


def atom_value(a: Atom, reg: Registry, target, leaf: Callable = _value_leaf):
    """Value of ``a`` in ``target``; the builtin embeddings land in ``target``."""
    v = leaf(a.term, a.carrier)
    for name in reversed(a.homs):
        h = builtin_hom(name, target, reg) if name in (NAT_EMBED, INT_EMBED) else reg.hom(name)
        v = h(v)
    return v


def varmap_values(vm, reg, target, leaf=_value_leaf):
    """Concrete values of a VarMap whose entries are atoms (or het subtrees)."""
    out = []
    for a in vm:
        if isinstance(a, Atom) and isinstance(a.term, Node) and type(a.term) in REXPR:
            v = het_eval(a.term, reg, leaf)
            for name in reversed(a.homs):
                h = builtin_hom(name, target, reg) if name in (NAT_EMBED, INT_EMBED) else reg.hom(name)
                v = h(v)
            out.append(v)
        else:
            out.append(atom_value(a, reg, target, leaf))
    return out


# value-level pushdown (Mnorm) ----------------------------------------------------

def m_norm(f: HomRef, e, reg: Registry, leaf: Callable = _value_leaf):
    """Push ``f`` to the leaves of an MExpr and evaluate in ``f.cod``."""
    if f.dom != e.carrier:
        raise DomainMismatch(f"accumulator {f.name} starts at {f.dom}, expression is over {e.carrier}")
    d = reg.domain(f.cod)

    def expand(n, acc):
        t = type(n)
        if t is MMorph:
            return [(n.e, hom_compose(acc, n.hom))], None
        return [(k, acc) for k in het_children(n)], None

    def combine(n, acc, _m, r):
        t = type(n)
        if t is MX:
            return acc(leaf(n.x, n.carrier))
        if t is MO:
            return d.zero()
        if t is MOpp:
            return d.neg(r[0])
        if t is MAdd:
            return d.add(r[0], r[1])
        if t is MSub:
            return d.add(r[0], d.neg(r[1]))
        return r[0]

    return fold(e, f, expand, combine)


# symbolic pushdown ---------------------------------------------------------------

def m_lower(e, reg: Registry, f: Optional[HomRef] = None):
    """Hom-free MExpr over ``f.cod`` with :class:`Atom` leaves and no MSub."""
    f = f or identity(reg, e.carrier)

    def expand(n, acc):
        if type(n) is MMorph:
            return [(n.e, hom_compose(acc, n.hom))], None
        return [(k, acc) for k in het_children(n)], None

    def combine(n, acc, _m, r):
        t = type(n)
        c = acc.cod
        if t is MX:
            return MX(c, atom_key(acc, n.carrier, n.x, reg))
        if t is MO:
            return MO(c)
        if t is MOpp:
            return MOpp(c, r[0])
        if t is MAdd:
            return MAdd(c, r[0], r[1])
        if t is MSub:
            return MAdd(c, r[0], MOpp(c, r[1]))
        return r[0]

    return fold(e, f, expand, combine)


def m_to_ag(e, vm, reg: Registry, f: Optional[HomRef] = None):
    """Lower an MExpr straight to AGExpr, allocating atoms in ``vm``."""
    f = f or identity(reg, e.carrier)

    def expand(n, acc):
        if type(n) is MMorph:
            return [(n.e, hom_compose(acc, n.hom))], None
        return [(k, acc) for k in het_children(n)], None

    def combine(n, acc, _m, r):
        t = type(n)
        if t is MX:
            return AGX(vm.mem(atom_key(acc, n.carrier, n.x, reg)))
        if t is MO:
            return AGO()
        if t is MOpp:
            return AGOpp(r[0])
        if t is MAdd:
            return AGAdd(r[0], r[1])
        if t is MSub:
            return AGAdd(r[0], AGOpp(r[1]))
        return r[0]

    return fold(e, f, expand, combine)


def n_norm(e, vm):
    """NExpr to PExpr; naturals enter the ring through ``natr``."""
    def expand(n, _):
        return [(k, None) for k in het_children(n)], None

    def combine(n, _c, _m, r):
        t = type(n)
        if t is NC:
            return PEc(n.n)
        if t is NX:
            return PEX(vm.mem(nat_atom(n.x)) + 1)
        if t is NAdd:
            return PEadd(r[0], r[1])
        if t is NSucc:
            return PEadd(PEI(), r[0])
        if t is NMul:
            return PEmul(r[0], r[1])
        return PEpow(r[0], n.n)

    return fold(e, None, expand, combine)


class _Lowering:
    """Shared driver for r_norm/zm_norm (ring) and f_norm/fzm_norm (field)."""

    def __init__(self, reg, vm, target, field_mode):
        self.reg = reg
        self.vm = vm
        self.target = target
        self.field = field_mode
        self._intr = None

    def intr(self):
        if self._intr is None:
            self._intr = builtin_hom(INT_EMBED, self.target, self.reg)
        return self._intr

    def var(self, key):
        return PEX(self.vm.mem(key) + 1)

    def expand(self, n, acc):
        t = type(n)
        if t in (RMorph, RMorphAdd, ZMMorph):
            return [(n.e, hom_compose(acc, n.hom))], None
        if t in (RMuln, ZMMuln):
            return [(n.e, acc), (n.n, None)], None
        if t in (RMulz, ZMMulz):
            return [(n.e, acc), (n.z, self.intr())], None
        if not self.field and t in (RInv, RExpNegz):
            return (), None
        if t in NEXPR:
            return [(k, None) for k in het_children(n)], None
        return [(k, acc) for k in het_children(n)], None

    def combine(self, n, acc, _m, r):
        t = type(n)
        if t in (RX, ZMX):
            return self.var(atom_key(acc, n.carrier, n.x, self.reg))
        if t in (R0, ZM0):
            return PEO()
        if t is R1:
            return PEI()
        if t in (ROpp, RZOpp, ZMOpp):
            return PEopp(r[0])
        if t in (RAdd, RZAdd, ZMAdd, NAdd):
            return PEadd(r[0], r[1])
        if t is RZSub:
            return PEsub(r[0], r[1])
        if t in (RMul, RZMul, RMuln, RMulz, ZMMuln, ZMMulz, NMul):
            return PEmul(r[0], r[1])
        if t in (RExpn, RExpPosz, NExp):
            return PEpow(r[0], n.n)
        if t is RExpNegz:
            if self.field:
                return FEinv(PEpow(r[0], n.n + 1))
            return self.var(Atom(acc.components, n.carrier, n))
        if t is RZExp:
            return PEc(0) if n.z < 0 else PEpow(r[0], n.z)
        if t is RInv:
            if self.field:
                return FEinv(r[0])
            return self.var(Atom(acc.components, n.carrier, n))
        if t in _MORPHS:
            return r[0]
        if t is RPosz:
            return r[0]
        if t is RNegz:
            return PEopp(PEadd(PEI(), r[0]))
        if t is RZC:
            return PEc(n.z)
        if t is NC:
            return PEc(n.n)
        if t is NX:
            return self.var(nat_atom(n.x))
        if t is NSucc:
            return PEadd(PEI(), r[0])
        raise TypeError(f"not an RExpr/ZMExpr node: {n!r}")

    def run(self, e, f):
        return fold(e, f, self.expand, self.combine)


def _lower(e, vm, reg, f, field_mode):
    f = f or identity(reg, carrier_of(e))
    if f.dom != carrier_of(e):
        raise DomainMismatch(f"accumulator {f.name} starts at {f.dom}, "
                             f"expression is over {carrier_of(e)}")
    return _Lowering(reg, vm, f.cod, field_mode).run(e, f)


def r_norm(e, vm, reg: Registry, f: Optional[HomRef] = None):
    """Ring-mode lowering of an RExpr (inverses become atoms)."""
    return _lower(e, vm, reg, f, False)


def zm_norm(e, vm, reg: Registry, f: Optional[HomRef] = None):
    """Ring-mode lowering of a ZMExpr under an additive accumulator."""
    return _lower(e, vm, reg, f, False)


def f_norm(e, vm, reg: Registry, f: Optional[HomRef] = None):
    """Field-mode lowering: inverses become FEinv nodes."""
    return _lower(e, vm, reg, f, True)


def fzm_norm(e, vm, reg: Registry, f: Optional[HomRef] = None):
    return _lower(e, vm, reg, f, True)


# well-formedness ---------------------------------------------------------------

def check_carriers(e, reg: Optional[Registry] = None):
    """Verify the carrier indices of a heterogeneous tree; return its carrier."""
    def expand(n, _):
        return [(k, None) for k in het_children(n)], None

    def combine(n, _c, _m, r):
        t = type(n)
        c = carrier_of(n)
        kids = het_children(n)
        if t in _MORPHS:
            if n.hom.dom != n.dom or n.hom.cod != c:
                raise DomainMismatch(f"{t.__name__} over {n.dom}->{c} holds hom "
                                     f"{n.hom.name}: {n.hom.dom}->{n.hom.cod}")
            if r[0] != n.dom:
                raise DomainMismatch(f"{t.__name__} child is over {r[0]}, expected {n.dom}")
            if t is RMorph and not n.hom.is_rmorphism:
                raise DomainMismatch(f"RMorph needs a ring morphism, got {n.hom.name}")
            return c
        expected = []
        for k in kids:
            kt = type(k)
            if kt in NEXPR:
                expected.append(NAT)
            elif t in (RMulz, ZMMulz) and k is n.z:
                expected.append(INT)
            elif t in (RPosz, RNegz):
                expected.append(NAT)
            else:
                expected.append(c)
        for got, want, k in zip(r, expected, kids):
            if got != want:
                raise DomainMismatch(f"{t.__name__} over {c} has a child over {got}")
            if t in (RMuln, ZMMuln) and k is n.n and type(k) not in NEXPR:
                raise DomainMismatch(f"{t.__name__} multiplier must be an NExpr")
        if reg is not None and t not in NEXPR and c != NAT:
            reg.carrier(c)
            if t is RExpPosz and not reg.has_instance(c, Kind.unitRingType):
                raise DomainMismatch(f"RExpPosz needs a unitRingType on {c}")
            if t in (RInv, RExpNegz) and not reg.has_instance(c, Kind.unitRingType):
                raise DomainMismatch(f"{t.__name__} needs inverses on {c}")
        return c

    return fold(e, None, expand, combine)


def show_het(e, indent="  "):
    """Indented rendering of a heterogeneous tree, one constructor per line."""
    lines = []
    stack = [(e, 0)]
    while stack:
        n, depth = stack.pop()
        pad = indent * depth
        if not isinstance(n, Node):
            lines.append(f"{pad}{n}")
            continue
        t = type(n)
        label = t.__name__
        if t in _LEAVES:
            label += f" {_handle_text(n.x)}"
        elif t in (NC,):
            label += f" {n.n}"
        elif t is RZC:
            label += f" {n.z}"
        if t in _MORPHS:
            label += f" {n.hom.name}"
        if hasattr(n, "carrier") and t not in NEXPR:
            label += f" : {n.carrier}"
        if t in (RExpn, RExpPosz, RExpNegz, NExp):
            label += f" ^{n.n}"
        elif t is RZExp:
            label += f" ^{n.z}"
        lines.append(pad + label)
        for k in reversed(het_children(n)):
            stack.append((k, depth + 1))
    return "\n".join(lines)


def _handle_text(x):
    show = getattr(x, "show", None)
    return show() if callable(show) else repr(x)
