"""Integer-subring recognition and reduction of side conditions.

:func:`recognize` rebuilds a ring expression from the six closure rules
(zero, one, opposite, addition, multiplication, scaling by an integer),
recording the derivation.  Over an ordered domain the embedding of the
integers is injective, so a ring disequation between recognized
expressions is equivalent to the integer disequation between their integer
counterparts (:func:`reduce_diseq`).  :func:`decide_int_diseq` settles the
ground and single-variable linear cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .carriers import INT_EMBED, NAT_EMBED, Kind, Registry
from .horner import (PEadd, PEc, PEI, PEmul, PEO, PEopp, PEpow, PEsub, PEX, Pc,
                     Pinj, PX, P0, pnorm, pretty, psub, to_pexpr)
from .preprocess import NAT, Atom
from .zmod import VarMap


@dataclass(frozen=True)
class Rule:
    """One step of a derivation, e.g. ``zify_mulrz(zify_one, n)``."""

    name: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


@dataclass
class ZifyWitness:
    rval: object      # PExpr over the ring variable map
    zval: object      # PExpr over ``zvars``
    trace: Rule
    zvars: VarMap = field(repr=False)

    def zval_text(self):
        return pretty(self.zval, lambda i: _zname(self.zvars[i - 1]))


def _zname(atom):
    t = atom.term
    show = getattr(t, "show", None)
    return show() if callable(show) else str(t)


def int_atom(a, reg: Registry, target):
    """``True`` when ``a`` denotes the image of an integer (or natural) in ``target``."""
    if not isinstance(a, Atom):
        return False
    if a.homs == (NAT_EMBED,) and a.carrier == NAT:
        return True
    c = reg.carriers.get(a.carrier)
    if c is None or c.semantics.kind != "integers":
        return False
    return a.homs == (INT_EMBED,) or (a.homs == () and a.carrier == target)


def recognize(e, vm, reg: Registry, target, zvars: Optional[VarMap] = None) -> Optional[ZifyWitness]:
    """Bottom-up recognition of ``e`` in the integer subring of ``target``.

    ``vm`` is the variable map ``e`` is read against.  Returns ``None`` as
    soon as some leaf is not an embedded integer.
    """
    zvars = zvars if zvars is not None else VarMap()
    out = {}

    def is_int_leaf(n):
        return type(n) is PEX and 1 <= n.index <= len(vm) and int_atom(vm[n.index - 1], reg, target)

    def numeral(n):
        # a literal k reifies as PEc k or as 1 *+ k
        if type(n) is PEc:
            return n.c
        if type(n) is PEmul and type(n.l) is PEI and type(n.r) is PEc:
            return n.r.c
        return None

    def leaf_var(n):
        a = vm[n.index - 1]
        return PEX(zvars.mem(a) + 1), _zname(a)

    def lit(k):
        if k == 0:
            return PEc(0), Rule("zify_zero")
        if k == 1:
            return PEc(1), Rule("zify_one")
        if k > 1:
            return PEc(k), Rule("zify_mulrz", (Rule("zify_one"), k))
        z, tr = lit(-k)
        return PEopp(z), Rule("zify_opp", (tr,))

    # explicit post-order walk; results keyed by node identity
    stack = [(e, False)]
    while stack:
        n, done = stack.pop()
        t = type(n)
        if not done:
            stack.append((n, True))
            if t is PEmul and (numeral(n.r) is not None or is_int_leaf(n.r)):
                if type(n.l) is PEI and (is_int_leaf(n.r) or type(n.r) is PEc):
                    continue
                stack.append((n.l, False))
            elif t in (PEadd, PEsub, PEmul):
                stack.append((n.r, False))
                stack.append((n.l, False))
            elif t in (PEopp, PEpow):
                stack.append((n.e, False))
            continue
        if t is PEO:
            res = (PEc(0), Rule("zify_zero"))
        elif t is PEI:
            res = (PEc(1), Rule("zify_one"))
        elif t is PEc:
            res = lit(n.c)
        elif t is PEX:
            if not is_int_leaf(n):
                return None
            z, name = leaf_var(n)
            res = (z, Rule("zify_mulrz", (Rule("zify_one"), name)))
        elif t is PEopp:
            a = out.get(id(n.e))
            if a is None:
                return None
            res = (PEopp(a[0]), Rule("zify_opp", (a[1],)))
        elif t in (PEadd, PEsub):
            a, b = out.get(id(n.l)), out.get(id(n.r))
            if a is None or b is None:
                return None
            if t is PEsub:
                b = (PEopp(b[0]), Rule("zify_opp", (b[1],)))
            res = (PEadd(a[0], b[0]), Rule("zify_add", (a[1], b[1])))
        elif t is PEmul:
            k = numeral(n.r)
            if k is not None or is_int_leaf(n.r):
                if k is not None:
                    kz = PEc(k)
                else:
                    kz, k = leaf_var(n.r)
                if type(n.l) is PEI and type(n.r) is PEc:
                    res = lit(k)
                elif type(n.l) is PEI and type(n.r) is PEX:
                    res = (kz, Rule("zify_mulrz", (Rule("zify_one"), k)))
                else:
                    a = out.get(id(n.l))
                    if a is None:
                        return None
                    if type(k) is int and k < 0:
                        # negative multiplier: opposite of the natural part
                        res = (PEopp(PEmul(a[0], PEc(-k))),
                               Rule("zify_opp", (Rule("zify_mulrz", (a[1], -k)),)))
                    else:
                        res = (PEmul(a[0], kz), Rule("zify_mulrz", (a[1], k)))
            else:
                a, b = out.get(id(n.l)), out.get(id(n.r))
                if a is None or b is None:
                    return None
                res = (PEmul(a[0], b[0]), Rule("zify_mul", (a[1], b[1])))
        elif t is PEpow:
            a = out.get(id(n.e))
            if a is None:
                return None
            if n.n == 0:
                res = (PEc(1), Rule("zify_one"))
            else:
                z, tr = a
                for _ in range(n.n - 1):
                    z, tr = PEmul(z, a[0]), Rule("zify_mul", (tr, a[1]))
                res = (z, tr)
        else:
            return None
        out[id(n)] = res
    z, tr = out[id(e)]
    return ZifyWitness(e, z, tr, zvars)


@dataclass
class IntDiseq:
    """``lhs rel rhs`` over the integers; both sides are PExpr over ``zvars``."""

    lhs: object
    rhs: object
    relation: str  # "!=" or "="
    zvars: VarMap = field(repr=False)
    trace: Optional[str] = None

    def text(self):
        name = lambda i: _zname(self.zvars[i - 1])  # noqa: E731
        return f"{pretty(self.lhs, name)} {self.relation} {pretty(self.rhs, name)} : int"


def _split_constant(p):
    """``(p - c, c)`` where ``c`` is the constant term of ``p``."""
    def const(p):
        t = type(p)
        if t is Pc:
            return p.c
        if t is Pinj:
            return const(p.p)
        return const(p.q)

    c = const(p)
    return psub(p, Pc(c)), c


def _leading_negative(p):
    t = type(p)
    if t is Pc:
        return p.c < 0
    if t is Pinj:
        return _leading_negative(p.p)
    return _leading_negative(p.p)


def reduce_diseq(cond, vm, reg: Registry, target, rhs=None, relation="!=") -> Optional[IntDiseq]:
    """Reduce ``cond != 0`` (or ``cond != rhs``) over an ordered domain.

    ``cond`` is a :class:`SideCondition` or a PExpr.  The integer side is
    normalized: variables to the left, the constant to the right, leading
    coefficient positive.
    """
    if not reg.has_instance(target, Kind.numDomainType):
        return None
    expr = getattr(cond, "expr", cond)
    zvars = VarMap()
    w1 = recognize(expr, vm, reg, target, zvars)
    if w1 is None:
        return None
    w2 = recognize(rhs if rhs is not None else PEO(), vm, reg, target, zvars)
    if w2 is None:
        return None
    diff = psub(pnorm(w1.zval), pnorm(w2.zval))
    var_part, c = _split_constant(diff)
    if _leading_negative(var_part) or (var_part == P0 and c < 0):
        var_part, c = psub(P0, var_part), -c
    trace = str(w1.trace) if rhs is None else f"{w1.trace} == {w2.trace}"
    return IntDiseq(to_pexpr(var_part), PEc(-c), relation, zvars, trace)


PROVED = "Proved"
RESIDUAL = "Residual"


@dataclass
class IntVerdict:
    status: str
    reason: str


def _linear_one_var(p):
    """``(a, k)`` if ``p`` is ``a * X + k`` for a single variable, else None."""
    def strip(p):
        skipped = 0
        while type(p) is Pinj:
            skipped += p.j
            p = p.p
        return p

    p = strip(p)
    if type(p) is not PX or p.i != 1 or type(p.p) is not Pc:
        return None
    if type(p.q) is not Pc:
        return None
    return p.p.c, p.q.c


def decide_int_diseq(d: IntDiseq) -> IntVerdict:
    diff = psub(pnorm(d.lhs), pnorm(d.rhs))
    if d.relation == "=":
        if diff == P0:
            return IntVerdict(PROVED, "both sides normalize to the same polynomial")
        return IntVerdict(RESIDUAL, "sides differ; equalities are only decided syntactically")
    if type(diff) is Pc:
        if diff.c != 0:
            return IntVerdict(PROVED, f"ground: {diff.c} != 0")
        return IntVerdict(RESIDUAL, "ground: 0 != 0 is false")
    lin = _linear_one_var(diff)
    if lin is None:
        return IntVerdict(RESIDUAL, "not a single-variable linear disequation")
    a, k = lin
    if k % a != 0:
        return IntVerdict(PROVED, f"{a} does not divide {-k}")
    return IntVerdict(RESIDUAL, f"falsified at {-k // a}")
