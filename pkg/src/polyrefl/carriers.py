"""Carriers, the structure hierarchy, instance paths and homomorphisms.

A :class:`Registry` plays the role of the canonical-instance database: each
carrier is declared once at some :class:`Kind`, and an instance at any
ancestor kind is obtained by projecting along the hierarchy.  Projections only
forget structure, so two instance paths over the same carrier that end at the
same kind denote the same instance (:func:`instances_equal`).
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import (DomainMismatch, DuplicateName, KindMismatch,
                     KindSemanticsMismatch, NoInstance, OpaqueCarrier,
                     RegistryFrozen, StructureLawViolation, UnknownCarrier,
                     UnknownHom)


class Kind(enum.Enum):
    eqType = "eqType"
    zmodType = "zmodType"
    ringType = "ringType"
    comRingType = "comRingType"
    unitRingType = "unitRingType"
    comUnitRingType = "comUnitRingType"
    fieldType = "fieldType"
    numDomainType = "numDomainType"
    numFieldType = "numFieldType"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text):
        try:
            return cls(text)
        except ValueError:
            raise KindMismatch(f"unknown structure kind {text!r}") from None


# direct superclasses, in the order used to pick canonical projection chains
PARENTS = {
    Kind.eqType: (),
    Kind.zmodType: (Kind.eqType,),
    Kind.ringType: (Kind.zmodType,),
    Kind.comRingType: (Kind.ringType,),
    Kind.unitRingType: (Kind.ringType,),
    Kind.comUnitRingType: (Kind.comRingType, Kind.unitRingType),
    Kind.fieldType: (Kind.comUnitRingType,),
    Kind.numDomainType: (Kind.comUnitRingType,),
    Kind.numFieldType: (Kind.fieldType, Kind.numDomainType),
}


def projection_chain(sub: Kind, sup: Kind) -> Optional[tuple]:
    """Shortest list of projection steps from ``sub`` up to ``sup``.

    Steps are returned in application order (first step first).  ``()`` when
    ``sub is sup``; ``None`` when ``sub`` does not inherit from ``sup``.
    """
    if sub is sup:
        return ()
    prev = {sub: None}
    queue = deque([sub])
    while queue:
        k = queue.popleft()
        for p in PARENTS[k]:
            if p in prev:
                continue
            prev[p] = k
            if p is sup:
                steps = []
                while p is not sub:
                    steps.append(p)
                    p = prev[p]
                return tuple(reversed(steps))
            queue.append(p)
    return None


def inherits(sub: Kind, sup: Kind) -> bool:
    return projection_chain(sub, sup) is not None


@dataclass(frozen=True)
class InstancePath:
    """A structure instance of ``base``, reached from its canonical
    ``declared_kind`` instance by the explicit projections listed outermost
    first."""

    base: str
    declared_kind: Kind
    projections: tuple = ()

    def __post_init__(self):
        cur = self.declared_kind
        for step in reversed(self.projections):
            if step not in PARENTS[cur]:
                raise KindMismatch(f"{step} is not a direct superclass of {cur}")
            cur = step

    @property
    def final_kind(self) -> Kind:
        return self.projections[0] if self.projections else self.declared_kind

    def project(self, kind: Kind) -> "InstancePath":
        steps = projection_chain(self.final_kind, kind)
        if steps is None:
            raise NoInstance(f"{self} has no {kind} projection")
        return InstancePath(self.base, self.declared_kind,
                            tuple(reversed(steps)) + self.projections)

    def __str__(self):
        s = f"{self.base}_{self.declared_kind}"
        for k in reversed(self.projections):
            s = f"{k}({s})"
        return s


def instances_equal(a: InstancePath, b: InstancePath) -> bool:
    """Conversion check on instances: same carrier, same final structure."""
    return a.base == b.base and a.final_kind is b.final_kind


def syntactic_instances_equal(a: InstancePath, b: InstancePath) -> bool:
    """Purely syntactic comparison, as a naive reifier would do it."""
    return a == b


# executable element domains --------------------------------------------------

@dataclass(frozen=True)
class Semantics:
    kind: str  # integers | rationals | modular | opaque
    modulus: Optional[int] = None

    @classmethod
    def parse(cls, text):
        words = text.replace("(", " ").replace(")", " ").split()
        if not words:
            raise KindSemanticsMismatch("empty semantics")
        if words[0] in ("integers", "rationals", "opaque") and len(words) == 1:
            return cls(words[0])
        if words[0] == "modular" and len(words) == 2 and words[1].isdigit():
            return cls("modular", int(words[1]))
        raise KindSemanticsMismatch(f"unknown element semantics {text!r}")

    def __str__(self):
        return f"modular {self.modulus}" if self.kind == "modular" else self.kind


INTEGERS = Semantics("integers")
RATIONALS = Semantics("rationals")
OPAQUE = Semantics("opaque")


def modular(m):
    return Semantics("modular", m)


class Domain:
    """Arithmetic on the elements of an executable carrier.

    ``ops`` counts every arithmetic operation performed; tests use it to
    check that deciding a goal never computes in the carrier.
    """

    def __init__(self):
        self.ops = 0

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def natmul(self, x, n):
        """``x *+ n`` by binary iterated addition."""
        acc = self.zero()
        while n > 0:
            if n & 1:
                acc = self.add(acc, x)
            x = self.add(x, x)
            n >>= 1
        return acc

    def intmul(self, x, n):
        return self.neg(self.natmul(x, -n)) if n < 0 else self.natmul(x, n)

    def pow(self, x, n):
        acc = self.one()
        while n > 0:
            if n & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            n >>= 1
        return acc

    def exprz(self, x, n):
        return self.inv(self.pow(x, -n)) if n < 0 else self.pow(x, n)

    def eq(self, x, y):
        return x == y


class IntegerDomain(Domain):
    def from_int(self, n):
        return int(n)

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise DomainMismatch(f"{v} is not an integer")
            return v.numerator
        return int(v)

    def add(self, x, y):
        self.ops += 1
        return x + y

    def neg(self, x):
        self.ops += 1
        return -x

    def mul(self, x, y):
        self.ops += 1
        return x * y

    def inv(self, x):
        # x^-1 is x itself when x is not a unit
        self.ops += 1
        return x

    def sample(self, rng):
        return rng.choice((rng.randint(-5, 5), rng.randint(-1000, 1000), rng.randint(-10**12, 10**12)))


class RationalDomain(Domain):
    def from_int(self, n):
        return Fraction(n)

    def coerce(self, v):
        return Fraction(v)

    def add(self, x, y):
        self.ops += 1
        return x + y

    def neg(self, x):
        self.ops += 1
        return -x

    def mul(self, x, y):
        self.ops += 1
        return x * y

    def inv(self, x):
        self.ops += 1
        return x if x == 0 else 1 / x

    def sample(self, rng):
        return Fraction(rng.randint(-50, 50), rng.randint(1, 12))


class ModularDomain(Domain):
    def __init__(self, m):
        super().__init__()
        self.m = m

    def from_int(self, n):
        return int(n) % self.m

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v.numerator * pow(v.denominator, -1, self.m) % self.m
        return int(v) % self.m

    def add(self, x, y):
        self.ops += 1
        return (x + y) % self.m

    def neg(self, x):
        self.ops += 1
        return -x % self.m

    def mul(self, x, y):
        self.ops += 1
        return x * y % self.m

    def inv(self, x):
        self.ops += 1
        try:
            return pow(x, -1, self.m)
        except ValueError:
            return x

    def sample(self, rng):
        return rng.randrange(self.m)


def make_domain(sem: Semantics) -> Optional[Domain]:
    if sem.kind == "integers":
        return IntegerDomain()
    if sem.kind == "rationals":
        return RationalDomain()
    if sem.kind == "modular":
        return ModularDomain(sem.modulus)
    return None


# carriers and homomorphisms ----------------------------------------------------

@dataclass(frozen=True)
class Carrier:
    name: str
    kind: Kind
    semantics: Semantics
    domain: Optional[Domain] = field(default=None, compare=False, repr=False)

    @property
    def opaque(self):
        return self.domain is None


ADDITIVE = "additive"
RMORPHISM = "rmorphism"

# hom names reserved for the canonical embeddings of nat and int into a ring
NAT_EMBED = "natr"
INT_EMBED = "intr"
RESERVED = frozenset({NAT_EMBED, INT_EMBED})


@dataclass(frozen=True)
class HomRef:
    """A declared homomorphism, or a composition of declared ones.

    ``components`` lists the declared homs outermost first; it is empty for
    identities, so composing with an identity leaves the key unchanged.
    """

    name: str
    kind: str
    dom: str
    cod: str
    semantics: Optional[Callable] = field(default=None, compare=False, repr=False)
    components: tuple = ()

    @property
    def is_rmorphism(self):
        return self.kind == RMORPHISM

    def __call__(self, x):
        if self.semantics is None:
            raise OpaqueCarrier(f"hom {self.name} has no executable semantics")
        return self.semantics(x)


def identity_hom(carrier: str, kind=RMORPHISM) -> HomRef:
    return HomRef(f"id_{carrier}", kind, carrier, carrier, lambda x: x, ())


def hom_compose(outer: HomRef, inner: HomRef) -> HomRef:
    """``outer \\o inner``."""
    if inner.cod != outer.dom:
        raise DomainMismatch(f"cannot compose {outer.name}: {outer.dom} -> {outer.cod} "
                             f"after {inner.name}: {inner.dom} -> {inner.cod}")
    if not inner.components:
        return outer if outer.dom == inner.dom else _retag(outer, inner)
    if not outer.components:
        return inner if inner.cod == outer.cod else _retag(inner, outer)
    kind = RMORPHISM if outer.is_rmorphism and inner.is_rmorphism else ADDITIVE
    sem = None
    if outer.semantics is not None and inner.semantics is not None:
        f, g = outer.semantics, inner.semantics
        sem = lambda x: f(g(x))  # noqa: E731
    return HomRef(f"{outer.name}\\o{inner.name}", kind, inner.dom, outer.cod, sem,
                  outer.components + inner.components)


def _retag(h, ident):
    kind = RMORPHISM if h.is_rmorphism and ident.is_rmorphism else ADDITIVE
    return HomRef(h.name, kind, h.dom, h.cod, h.semantics, h.components)


def _is_prime(m):
    from sympy import isprime
    return isprime(m)


LAW_SAMPLES = 100


class Registry:
    """Carrier and homomorphism declarations.

    Built single-threaded, then :meth:`freeze` makes it read-only so that any
    number of solver sessions can share it.
    """

    def __init__(self):
        self.carriers = {}
        self.homs = {}
        self.frozen = False

    # declarations

    def _check_open(self):
        if self.frozen:
            raise RegistryFrozen("registry is frozen")

    def declare_carrier(self, name, kind, semantics=OPAQUE) -> Carrier:
        self._check_open()
        kind = Kind.parse(kind) if isinstance(kind, str) else kind
        semantics = Semantics.parse(semantics) if isinstance(semantics, str) else semantics
        if name in self.carriers or name in self.homs or name in RESERVED:
            raise DuplicateName(f"carrier {name!r} is already declared")
        _check_semantics(name, kind, semantics)
        c = Carrier(name, kind, semantics, make_domain(semantics))
        self.carriers[name] = c
        return c

    def declare_hom(self, name, kind, dom, cod, semantics=None) -> HomRef:
        self._check_open()
        if name in self.homs or name in self.carriers or name in RESERVED:
            raise DuplicateName(f"hom {name!r} is already declared")
        if kind not in (ADDITIVE, RMORPHISM):
            raise KindMismatch(f"hom kind must be additive or rmorphism, not {kind!r}")
        d, c = self.carrier(dom), self.carrier(cod)
        need = Kind.ringType if kind == RMORPHISM else Kind.zmodType
        for car in (d, c):
            if not inherits(car.kind, need):
                raise KindMismatch(f"{kind} {name} needs a {need} instance on {car.name}")
        if d.opaque or c.opaque:
            semantics = None
        h = HomRef(name, kind, dom, cod, semantics, (name,))
        if semantics is not None:
            check_hom_laws(h, d.domain, c.domain)
        self.homs[name] = h
        return h

    def freeze(self):
        self.frozen = True
        return self

    # queries

    def carrier(self, name) -> Carrier:
        try:
            return self.carriers[name]
        except KeyError:
            raise UnknownCarrier(f"unknown carrier {name!r}") from None

    def hom(self, name) -> HomRef:
        try:
            return self.homs[name]
        except KeyError:
            raise UnknownHom(f"unknown hom {name!r}") from None

    def domain(self, name) -> Domain:
        c = self.carrier(name)
        if c.domain is None:
            raise OpaqueCarrier(f"carrier {name} is opaque")
        return c.domain

    def characteristic(self, name) -> Optional[int]:
        """0 or the modulus when known; None for an opaque carrier."""
        c = self.carrier(name)
        if c.semantics.kind in ("integers", "rationals") or inherits(c.kind, Kind.numDomainType):
            return 0
        if c.semantics.kind == "modular":
            return c.semantics.modulus
        return None

    def has_instance(self, name, kind) -> bool:
        return name in self.carriers and inherits(self.carriers[name].kind, kind)

    def resolve_instance(self, name, kind) -> InstancePath:
        c = self.carrier(name)
        steps = projection_chain(c.kind, kind)
        if steps is None:
            raise NoInstance(f"Cannot find a declared {_kind_phrase(kind)} on {name} "
                             f"(declared {c.kind})")
        return InstancePath(name, c.kind, tuple(reversed(steps)))

    def identity_hom(self, name) -> HomRef:
        kind = RMORPHISM if self.has_instance(name, Kind.ringType) else ADDITIVE
        return identity_hom(name, kind)

    def embedding(self, which, cod) -> HomRef:
        """Canonical ``natr``/``intr`` embedding into ``cod`` (for evaluation)."""
        dom = self.domain(cod)
        return HomRef(which, RMORPHISM, "nat" if which == NAT_EMBED else "int", cod,
                      dom.from_int, (which,))

    def component(self, name, cod) -> HomRef:
        if name in RESERVED:
            return self.embedding(name, cod)
        return self.hom(name)

    def hom_compose(self, outer, inner):
        return hom_compose(outer, inner)


def _kind_phrase(kind):
    return {Kind.zmodType: "Z-module", Kind.ringType: "ring",
            Kind.comRingType: "commutative ring", Kind.fieldType: "field",
            Kind.numDomainType: "numeric domain"}.get(kind, str(kind))


def _check_semantics(name, kind, sem):
    if sem.kind == "integers" and inherits(kind, Kind.fieldType):
        raise KindSemanticsMismatch(f"{name}: the integers do not form a field")
    if sem.kind == "modular":
        m = sem.modulus
        if m is None or m < 2:
            raise KindSemanticsMismatch(f"{name}: modulus must be at least 2")
        if inherits(kind, Kind.numDomainType):
            raise KindSemanticsMismatch(f"{name}: Z/{m} has no compatible order")
        if inherits(kind, Kind.fieldType) and not _is_prime(m):
            raise KindSemanticsMismatch(f"{name}: Z/{m} is a field only for prime {m}")


def check_hom_laws(h: HomRef, dom: Domain, cod: Domain, samples=LAW_SAMPLES):
    """Property-check the structure-preservation laws on sampled points.

    The sample stream is seeded from the hom name, so a declaration either
    always passes or always fails.
    """
    rng = random.Random(h.name)
    f = h.semantics

    def fail(msg):
        raise StructureLawViolation(f"{h.name}: {msg}")

    try:
        if not cod.eq(f(dom.zero()), cod.zero()):
            fail("f(0) != 0")
        if h.is_rmorphism and not cod.eq(f(dom.one()), cod.one()):
            fail("f(1) != 1")
        pts = [dom.one(), dom.from_int(2), dom.from_int(-1)]
        pts += [dom.sample(rng) for _ in range(samples)]
        for i in range(samples):
            x, y = pts[i], pts[(i * 7 + 3) % len(pts)]
            if not cod.eq(f(dom.add(x, y)), cod.add(f(x), f(y))):
                fail(f"f({x} + {y}) != f({x}) + f({y})")
            if h.is_rmorphism and not cod.eq(f(dom.mul(x, y)), cod.mul(f(x), f(y))):
                fail(f"f({x} * {y}) != f({x}) * f({y})")
    except StructureLawViolation:
        raise
    except (ArithmeticError, TypeError, ValueError) as exc:
        fail(f"semantics raised {exc!r}")
