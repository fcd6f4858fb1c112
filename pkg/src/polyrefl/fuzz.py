"""Random generators for the property suites and the selftest command.

Every generator takes a :class:`random.Random` so that a seed determines
the whole workload.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .horner import PEadd, PEc, PEI, PEmul, PEO, PEopp, PEpow, PEsub, PEX
from .preprocess import (MAdd, MMorph, MO, MOpp, MSub, MX, NAdd, NC, NExp, NMul, NSucc, NX,
                         R0, R1, RAdd, RExpn, RExpNegz, RExpPosz, RInv, RMorph, RMorphAdd,
                         RMul, RMuln, RMulz, RNegz, ROpp, RPosz, RX, RZAdd, RZC, RZExp,
                         RZMul, RZOpp, RZSub, ZM0, ZMAdd, ZMMorph, ZMMuln, ZMMulz, ZMOpp, ZMX)
from .theory import DEFAULT_THEORY, load_theory
from .zmod import AGAdd, AGO, AGOpp, AGX

FUZZ_THEORY = DEFAULT_THEORY + """\
hom red97 : rmorphism int -> F97 = mod 97
hom ZtoQ : rmorphism Z -> rat = embed
hom idq : rmorphism rat -> rat = embed
hom double_q : additive rat -> rat = scale 2
hom triple_i : additive int -> int = scale 3
hom dbl97 : additive F97 -> F97 = scale 2
"""

FUZZ_CARRIERS = ("int", "rat", "F97", "Z")


def fuzz_registry():
    return load_theory(FUZZ_THEORY).freeze()


# Z-module expressions ---------------------------------------------------------

def rand_ag(rng: random.Random, nvars, size):
    if size <= 1 or nvars == 0:
        return AGO() if nvars == 0 or rng.random() < 0.1 else AGX(rng.randrange(nvars))
    if rng.random() < 0.2:
        return AGOpp(rand_ag(rng, nvars, size - 1))
    k = rng.randint(1, size - 1)
    return AGAdd(rand_ag(rng, nvars, k), rand_ag(rng, nvars, size - k))


# polynomial expressions -----------------------------------------------------------

def rand_pexpr(rng: random.Random, nvars=4, max_deg=12, size=20, coeff=50):
    """Random PExpr over ``nvars`` variables with total degree at most ``max_deg``."""
    if size <= 1 or max_deg == 0:
        x = rng.random()
        if max_deg > 0 and x < 0.55:
            return PEX(rng.randint(1, nvars))
        if x < 0.65:
            return PEO()
        if x < 0.75:
            return PEI()
        return PEc(rng.randint(-coeff, coeff))
    x = rng.random()
    if x < 0.1:
        return PEopp(rand_pexpr(rng, nvars, max_deg, size - 1, coeff))
    if x < 0.18 and max_deg >= 2:
        n = rng.randint(0, min(4, max_deg))
        inner = max_deg // max(n, 1)
        return PEpow(rand_pexpr(rng, nvars, inner, min(size - 1, 6), coeff), n)
    k = rng.randint(1, size - 1)
    if x < 0.45:
        d1 = rng.randint(0, max_deg)
        return PEmul(rand_pexpr(rng, nvars, d1, k, coeff),
                     rand_pexpr(rng, nvars, max_deg - d1, size - k, coeff))
    node = PEsub if x < 0.6 else PEadd
    return node(rand_pexpr(rng, nvars, max_deg, k, coeff),
                rand_pexpr(rng, nvars, max_deg, size - k, coeff))


# heterogeneous expressions --------------------------------------------------------

def rand_value(rng, reg, carrier):
    sem = reg.carrier(carrier).semantics
    if sem.kind == "rationals":
        return Fraction(rng.randint(-20, 20), rng.randint(1, 6))
    if sem.kind == "modular":
        return rng.randrange(sem.modulus)
    return rng.randint(-9, 9)


def _homs_into(reg, cod, rmorphism_only):
    out = [h for h in reg.homs.values() if h.cod == cod and (h.kind == "rmorphism" or not rmorphism_only)]
    return sorted(out, key=lambda h: h.name)


def rand_n(rng, size):
    if size <= 1:
        return NC(rng.randint(0, 4)) if rng.random() < 0.5 else NX(rng.randint(0, 5))
    x = rng.random()
    if x < 0.2:
        return NSucc(rand_n(rng, size - 1))
    if x < 0.3:
        return NExp(rand_n(rng, min(size - 1, 3)), rng.randint(0, 2))
    k = rng.randint(1, size - 1)
    node = NAdd if x < 0.7 else NMul
    return node(rand_n(rng, k), rand_n(rng, size - k))


def rand_m(rng, reg, c, size):
    """Random MExpr over carrier ``c``."""
    if size <= 1:
        return MO(c) if rng.random() < 0.1 else MX(c, rand_value(rng, reg, c))
    x = rng.random()
    homs = _homs_into(reg, c, False)
    if x < 0.2 and homs:
        h = rng.choice(homs)
        return MMorph(h.dom, c, h, rand_m(rng, reg, h.dom, size - 1))
    if x < 0.3:
        return MOpp(c, rand_m(rng, reg, c, size - 1))
    k = rng.randint(1, size - 1)
    node = MSub if x < 0.5 else MAdd
    return node(c, rand_m(rng, reg, c, k), rand_m(rng, reg, c, size - k))


def rand_zm(rng, reg, c, size):
    """Random ZMExpr over carrier ``c``."""
    if size <= 1:
        return ZM0(c) if rng.random() < 0.1 else ZMX(c, rand_value(rng, reg, c))
    x = rng.random()
    homs = _homs_into(reg, c, False)
    if x < 0.2 and homs:
        h = rng.choice(homs)
        return ZMMorph(h.dom, c, h, rand_zm(rng, reg, h.dom, size - 1))
    if x < 0.3:
        return ZMOpp(c, rand_zm(rng, reg, c, size - 1))
    if x < 0.4:
        return ZMMuln(c, rand_zm(rng, reg, c, size - 1), rand_n(rng, 2))
    if x < 0.5:
        return ZMMulz(c, rand_zm(rng, reg, c, size - 1), rand_r(rng, reg, "int", 2))
    k = rng.randint(1, size - 1)
    return ZMAdd(c, rand_zm(rng, reg, c, k), rand_zm(rng, reg, c, size - k))


def rand_r(rng, reg, c, size, field=None):
    """Random RExpr over carrier ``c``; inverses only when ``c`` is a field."""
    from .carriers import Kind
    if field is None:
        field = reg.has_instance(c, Kind.fieldType)
    if size <= 1:
        x = rng.random()
        if x < 0.08:
            return R0(c)
        if x < 0.16:
            return R1(c)
        if c == "Z" and x < 0.3:
            return RZC(rng.randint(-5, 5))
        if c == "int" and x < 0.3:
            return RPosz(rand_n(rng, 1)) if x < 0.23 else RNegz(rand_n(rng, 1))
        return RX(c, rand_value(rng, reg, c))
    sub = lambda s: rand_r(rng, reg, c, s, field)  # noqa: E731
    choices = ["opp", "add", "add", "mul", "mul", "exp", "muln", "mulz", "morph", "morphadd"]
    if field:
        choices += ["inv", "expnegz"]
    if c == "Z":
        choices += ["zopp", "zadd", "zsub", "zmul", "zexp"]
    if c == "int":
        choices += ["posz", "negz"]
    op = rng.choice(choices)
    k = rng.randint(1, max(1, size - 1))
    rest = max(1, size - k)
    if op == "opp":
        return ROpp(c, sub(size - 1))
    if op == "add":
        return RAdd(c, sub(k), sub(rest))
    if op == "mul":
        return RMul(c, sub(k), sub(rest))
    if op == "exp":
        e = sub(min(size - 1, 4))
        return RExpn(c, e, rng.randint(0, 3)) if rng.random() < 0.5 else RExpPosz(c, e, rng.randint(0, 3))
    if op == "muln":
        return RMuln(c, sub(size - 1), rand_n(rng, 2))
    if op == "mulz":
        return RMulz(c, sub(size - 1), rand_r(rng, reg, "int", 2))
    if op == "morph":
        homs = _homs_into(reg, c, True)
        if homs:
            h = rng.choice(homs)
            return RMorph(h.dom, c, h, rand_r(rng, reg, h.dom, size - 1))
        return ROpp(c, sub(size - 1))
    if op == "morphadd":
        homs = _homs_into(reg, c, False)
        if homs:
            h = rng.choice(homs)
            return RMorphAdd(h.dom, c, h, rand_zm(rng, reg, h.dom, size - 1))
        return ROpp(c, sub(size - 1))
    if op == "inv":
        return RInv(c, sub(size - 1))
    if op == "expnegz":
        return RExpNegz(c, sub(min(size - 1, 4)), rng.randint(0, 2))
    if op == "zopp":
        return RZOpp(sub(size - 1))
    if op == "zadd":
        return RZAdd(sub(k), sub(rest))
    if op == "zsub":
        return RZSub(sub(k), sub(rest))
    if op == "zmul":
        return RZMul(sub(k), sub(rest))
    if op == "zexp":
        return RZExp(sub(min(size - 1, 4)), rng.randint(-2, 3))
    if op == "posz":
        return RPosz(rand_n(rng, min(size - 1, 3)))
    return RNegz(rand_n(rng, min(size - 1, 3)))


# surface ring identities --------------------------------------------------------------

def ring_identity(rng: random.Random, budget=24, nvars=3, carrier="rat"):
    """A provable ring goal text built by scrambling a random polynomial."""
    from .bench import BenchSpec, Generator, render
    g = Generator(BenchSpec(max(budget, 2), nvars=nvars, coeff_bound=1000, max_degree=4), rng.random())
    lhs = g.poly(budget, 4)
    rhs = g.scramble(lhs)
    return lhs, rhs, f"{render(lhs)} = {render(rhs)} : {carrier} [ring]"


def perturb(rng: random.Random, lhs, rhs, nvars=3):
    """Bump one coefficient of the right-hand side by one.

    The coefficient is that of a monomial whose exponents are drawn at
    random, so the perturbed goal's two sides differ as polynomials.
    """
    mono = ("lit", 1)
    for i in range(nvars):
        for _ in range(rng.randint(0, 2)):
            mono = ("*", mono, ("var", f"x{i}"))
    return ("+", rhs, mono)
