"""Keyed reification and the top-level decision procedure.

:class:`Quoter` walks an elaborated goal side once and produces both the
heterogeneous tree and the homogeneous one (AGExpr, PExpr or FExpr),
allocating atoms in a shared :class:`~polyrefl.zmod.VarMap`.  Each level
has an ordered rule table.  A rule fires when the node's operator is its
key *and* the node's structure instance is convertible to the one resolved
for the rule; the first rule that fires is committed to.  Anything no rule
accepts becomes a variable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from ._tree import fold, gc_paused, same_tree
from .carriers import (INT_EMBED, NAT_EMBED, InstancePath, Kind, Registry,
                       hom_compose, instances_equal, syntactic_instances_equal)
from .errors import NoInstance, ReflError
from .horner import (FEinv, PEadd, PEc, PEI, PEmul, PEO, PEopp, PEpow, PEX,
                     SideCondition, field_decide, horner_text,
                     pnorm, pretty, psub, to_pexpr, zero_mod)
from .horner import show as show_pexpr
from . import preprocess as pp
from .preprocess import Atom, atom_key, builtin_hom, nat_atom
from .surface import Goal, Term, show_term
from .zify import PROVED, decide_int_diseq, reduce_diseq
from .zmod import AGAdd, AGO, AGOpp, AGX, VarMap, ag_difference
from .zmod import show as show_ag

ZBIN = pp.ZBIN
INT = pp.INT

MODE_KIND = {"zmodule": Kind.zmodType, "ring": Kind.comRingType, "field": Kind.fieldType}


class ConversionFailure(ReflError):
    """The lowered heterogeneous tree disagrees with the quoted one."""


# rule tables ------------------------------------------------------------------

@dataclass(frozen=True)
class QRule:
    name: str
    key: str
    kind: Optional[Kind]
    pre: Optional[Callable] = None  # (node, quoter) -> bool


def _is_z(n, q):
    return n.carrier == ZBIN


def _is_int(n, q):
    return n.carrier == INT


def _hom_ring(n, q):
    h = q.reg.hom(n.value)
    return h.is_rmorphism and q.reg.has_instance(h.dom, Kind.ringType)


M_RULES = (
    QRule("zero", "zero", Kind.zmodType),
    QRule("opp", "opp", Kind.zmodType),
    QRule("add", "add", Kind.zmodType),
    QRule("sub", "sub", Kind.zmodType),
    QRule("morph", "app", None),
)

R_RULES = (
    QRule("Zopp", "opp", None, _is_z),
    QRule("Zadd", "add", None, _is_z),
    QRule("Zsub", "sub", None, _is_z),
    QRule("Zmul", "mul", None, _is_z),
    QRule("Zexp", "exprz", None, _is_z),
    QRule("Zconst", "lit", None, _is_z),
    QRule("posz_lit", "lit", None, _is_int),
    QRule("posz", "posz", None, _is_int),
    QRule("negz", "negz", None, _is_int),
    QRule("zero", "zero", Kind.zmodType),
    QRule("opp", "opp", Kind.zmodType),
    QRule("add", "add", Kind.zmodType),
    QRule("sub", "sub", Kind.zmodType),
    QRule("natmul", "natmul", Kind.zmodType),
    QRule("intmul", "intmul", Kind.zmodType),
    QRule("one", "one", Kind.ringType),
    QRule("mul", "mul", Kind.ringType),
    QRule("exp", "exp", Kind.ringType),
    QRule("natr", "natr", Kind.ringType),
    QRule("intr", "intr", Kind.ringType),
    QRule("numeral", "lit", Kind.ringType),
    QRule("exprz", "exprz", Kind.unitRingType),
    QRule("inv", "inv", Kind.unitRingType),
    QRule("div", "div", Kind.unitRingType),
    QRule("expneg", "expneg", Kind.unitRingType),
    QRule("morph", "app", None, _hom_ring),
    QRule("morph_add", "app", None),
)

ZM_RULES = (
    QRule("zero", "zero", Kind.zmodType),
    QRule("opp", "opp", Kind.zmodType),
    QRule("add", "add", Kind.zmodType),
    QRule("sub", "sub", Kind.zmodType),
    QRule("natmul", "natmul", Kind.zmodType),
    QRule("intmul", "intmul", Kind.zmodType),
    QRule("morph", "app", None),
)

N_RULES = (
    QRule("const", "lit", None),
    QRule("add", "add", None),
    QRule("succ", "succ", None),
    QRule("mul", "mul", None),
    QRule("exp", "exp", None),
)

TABLES = {"m": M_RULES, "r": R_RULES, "zm": ZM_RULES, "n": N_RULES}


@dataclass(frozen=True)
class TraceEntry:
    node: int
    level: str
    rule: str
    outcome: str  # fire | instance-miss | variable


class Quoter:
    """One reification session; both sides of a goal share its VarMap.

    ``matcher="syntactic"`` reproduces a naive reifier that compares
    instance terms literally against the directly declared instance; it
    exists to demonstrate the aliasing failure and is never used by
    :func:`solve`.
    """

    def __init__(self, reg: Registry, mode: str, target: str, vm: Optional[VarMap] = None,
                 matcher: str = "conversion", record: bool = False):
        self.reg = reg
        self.mode = mode
        self.field = mode == "field"
        self.target = target
        self.vm = vm if vm is not None else VarMap()
        self.trace = [] if record else None
        self._seq = 0
        self._expected = {}
        self._syntactic = matcher == "syntactic"
        self._intr = None
        self.operator_atoms = 0

    # instance check

    def expected(self, carrier, kind):
        key = (carrier, kind)
        if key not in self._expected:
            if self._syntactic:
                self._expected[key] = InstancePath(carrier, kind, ())
            else:
                self._expected[key] = self.reg.resolve_instance(carrier, kind)
        return self._expected[key]

    def instance_ok(self, n: Term, kind):
        if n.instance is None or not self.reg.has_instance(n.carrier, kind):
            return False
        exp = self.expected(n.carrier, kind)
        if self._syntactic:
            return syntactic_instances_equal(n.instance, exp)
        return instances_equal(n.instance, exp)

    def intr(self):
        if self._intr is None:
            self._intr = builtin_hom(INT_EMBED, self.target, self.reg)
        return self._intr

    def _log(self, seq, level, rule, outcome):
        if self.trace is not None:
            self.trace.append(TraceEntry(seq, level, rule, outcome))

    def select(self, n: Term, level):
        seq = self._seq
        self._seq += 1
        for rule in TABLES[level]:
            if rule.key != n.op:
                continue
            if rule.pre is not None and not rule.pre(n, self):
                continue
            if rule.kind is not None and not self.instance_ok(n, rule.kind):
                self._log(seq, level, rule.name, "instance-miss")
                continue
            self._log(seq, level, rule.name, "fire")
            return rule.name
        self._log(seq, level, "variable", "variable")
        if n.args and level != "n":
            self.operator_atoms += 1
        return None

    # traversal

    def quote(self, t: Term, level: str = None, acc=None, emit=True):
        """Return ``(het, poly)``; ``poly`` is None when ``emit`` is false."""
        if level is None:
            level = "m" if self.mode == "zmodule" else "r"
        if acc is None:
            acc = self.reg.identity_hom(t.carrier if level != "n" else self.target)
        return fold(t, (level, acc, emit), self._expand, self._combine)

    def _expand(self, n, ctx):
        level, acc, emit = ctx
        rule = self.select(n, level)
        if rule is None:
            return (), None
        a = n.args
        if level == "n":
            return [(x, ("n", acc, emit)) for x in a], rule
        if rule in ("morph", "morph_add"):
            h = self.reg.hom(n.value)
            sub = "m" if level == "m" else ("r" if rule == "morph" and level == "r" else "zm")
            return [(a[0], (sub, hom_compose(acc, h), emit))], rule
        if rule in ("natmul",):
            return [(a[0], ctx), (a[1], ("n", acc, emit))], rule
        if rule in ("intmul",):
            return [(a[0], ctx), (a[1], ("r", self.intr(), emit))], rule
        if rule == "natr":
            return [(a[0], ("n", acc, emit))], rule
        if rule == "intr":
            return [(a[0], ("r", self.intr(), emit))], rule
        if rule in ("posz", "negz"):
            return [(a[0], ("n", acc, emit))], rule
        if not self.field and rule in ("inv", "expneg") or (
                not self.field and rule == "exprz" and n.value < 0):
            # ring mode: the whole subterm is an atom; quote children tree-only
            return [(x, (level, acc, False)) for x in a], rule
        if rule == "div" and not self.field:
            return [(a[0], ctx), (a[1], (level, acc, False))], rule
        return [(x, ctx) for x in a], rule

    def _var(self, key):
        return self.vm.mem(key)

    def _combine(self, n, ctx, rule, r):
        level, acc, emit = ctx
        c = n.carrier
        mk = self._make(level, rule, n, c, acc, emit, r)
        return mk

    def _atom_poly(self, level, key):
        i = self._var(key)
        return AGX(i) if level == "m" else PEX(i + 1)

    def _make(self, level, rule, n, c, acc, emit, r):
        het = [x[0] for x in r]
        poly = [x[1] for x in r]
        # variables
        if rule is None:
            if level == "n":
                h = pp.NX(n)
                return h, (PEX(self._var(nat_atom(n)) + 1) if emit else None)
            node = {"m": pp.MX, "r": pp.RX, "zm": pp.ZMX}[level](c, n)
            if not emit:
                return node, None
            return node, self._atom_poly(level, atom_key(acc, c, n, self.reg))
        if level == "n":
            if rule == "const":
                return pp.NC(n.value), (PEc(n.value) if emit else None)
            if rule == "add":
                return pp.NAdd(*het), (PEadd(*poly) if emit else None)
            if rule == "succ":
                return pp.NSucc(het[0]), (PEadd(PEI(), poly[0]) if emit else None)
            if rule == "mul":
                return pp.NMul(*het), (PEmul(*poly) if emit else None)
            return pp.NExp(het[0], n.value), (PEpow(poly[0], n.value) if emit else None)
        if level == "m":
            if rule == "zero":
                return pp.MO(c), AGO() if emit else None
            if rule == "opp":
                return pp.MOpp(c, het[0]), (AGOpp(poly[0]) if emit else None)
            if rule == "add":
                return pp.MAdd(c, *het), (AGAdd(*poly) if emit else None)
            if rule == "sub":
                return pp.MSub(c, *het), (AGAdd(poly[0], AGOpp(poly[1])) if emit else None)
            h = self.reg.hom(n.value)
            return pp.MMorph(h.dom, c, h, het[0]), poly[0]
        if level == "zm":
            if rule == "zero":
                return pp.ZM0(c), PEO() if emit else None
            if rule == "opp":
                return pp.ZMOpp(c, het[0]), (PEopp(poly[0]) if emit else None)
            if rule == "add":
                return pp.ZMAdd(c, *het), (PEadd(*poly) if emit else None)
            if rule == "sub":
                return (pp.ZMAdd(c, het[0], pp.ZMOpp(c, het[1])),
                        PEadd(poly[0], PEopp(poly[1])) if emit else None)
            if rule == "natmul":
                return pp.ZMMuln(c, *het), (PEmul(*poly) if emit else None)
            if rule == "intmul":
                return pp.ZMMulz(c, *het), (PEmul(*poly) if emit else None)
            h = self.reg.hom(n.value)
            return pp.ZMMorph(h.dom, c, h, het[0]), poly[0]
        return self._make_r(rule, n, c, acc, emit, het, poly)

    def _make_r(self, rule, n, c, acc, emit, het, poly):
        def out(h, p):
            return h, (p if emit else None)

        if rule == "Zopp":
            return out(pp.RZOpp(het[0]), emit and PEopp(poly[0]))
        if rule == "Zadd":
            return out(pp.RZAdd(*het), emit and PEadd(*poly))
        if rule == "Zsub":
            return out(pp.RZSub(*het), emit and pp.PEsub(*poly))
        if rule == "Zmul":
            return out(pp.RZMul(*het), emit and PEmul(*poly))
        if rule == "Zexp":
            z = n.value
            return out(pp.RZExp(het[0], z), emit and (PEc(0) if z < 0 else PEpow(poly[0], z)))
        if rule == "Zconst":
            return out(pp.RZC(n.value), emit and PEc(n.value))
        if rule == "posz_lit":
            return out(pp.RPosz(pp.NC(n.value)), emit and PEc(n.value))
        if rule == "posz":
            return out(pp.RPosz(het[0]), emit and poly[0])
        if rule == "negz":
            return out(pp.RNegz(het[0]), emit and PEopp(PEadd(PEI(), poly[0])))
        if rule == "zero":
            return out(pp.R0(c), PEO())
        if rule == "one":
            return out(pp.R1(c), PEI())
        if rule == "opp":
            return out(pp.ROpp(c, het[0]), emit and PEopp(poly[0]))
        if rule == "add":
            return out(pp.RAdd(c, *het), emit and PEadd(*poly))
        if rule == "sub":
            return out(pp.RAdd(c, het[0], pp.ROpp(c, het[1])),
                       emit and PEadd(poly[0], PEopp(poly[1])))
        if rule == "natmul":
            return out(pp.RMuln(c, *het), emit and PEmul(*poly))
        if rule == "intmul":
            return out(pp.RMulz(c, *het), emit and PEmul(*poly))
        if rule == "mul":
            return out(pp.RMul(c, *het), emit and PEmul(*poly))
        if rule == "exp":
            return out(pp.RExpn(c, het[0], n.value), emit and PEpow(poly[0], n.value))
        if rule == "natr":
            return out(pp.RMuln(c, pp.R1(c), het[0]), emit and PEmul(PEI(), poly[0]))
        if rule == "intr":
            return out(pp.RMulz(c, pp.R1(c), het[0]), emit and PEmul(PEI(), poly[0]))
        if rule == "numeral":
            return out(pp.RMuln(c, pp.R1(c), pp.NC(n.value)), emit and PEmul(PEI(), PEc(n.value)))
        if rule == "morph":
            h = self.reg.hom(n.value)
            return out(pp.RMorph(h.dom, c, h, het[0]), emit and poly[0])
        if rule == "morph_add":
            h = self.reg.hom(n.value)
            return out(pp.RMorphAdd(h.dom, c, h, het[0]), emit and poly[0])
        # unit-ring operators
        if rule == "exprz" and n.value >= 0:
            return out(pp.RExpPosz(c, het[0], n.value), emit and PEpow(poly[0], n.value))
        if rule == "exprz":
            node = pp.RExpNegz(c, het[0], -n.value - 1)
            fpoly = emit and self.field and FEinv(PEpow(poly[0], -n.value), origin=n.pos)
        elif rule == "inv":
            node = pp.RInv(c, het[0])
            fpoly = emit and self.field and FEinv(poly[0], origin=n.pos)
        elif rule == "expneg":
            node = pp.RInv(c, pp.RExpn(c, het[0], n.value))
            fpoly = emit and self.field and FEinv(PEpow(poly[0], n.value), origin=n.pos)
        elif rule == "div":
            inv = pp.RInv(c, het[1])
            node = pp.RMul(c, het[0], inv)
            if not emit:
                return node, None
            if self.field:
                return node, PEmul(poly[0], FEinv(poly[1], origin=n.pos))
            return node, PEmul(poly[0], self._inv_atom(acc, c, inv))
        else:
            raise AssertionError(rule)
        if not emit:
            return node, None
        if self.field:
            return node, fpoly
        return node, self._inv_atom(acc, c, node)

    def _inv_atom(self, acc, c, node):
        return PEX(self._var(Atom(acc.components, c, node)) + 1)


# solving ----------------------------------------------------------------------

PROVED_S = "Proved"
RESIDUALS_S = "ProvedWithResiduals"
REFUTED_S = "Refuted"
NOINSTANCE_S = "NoInstance"


@dataclass
class Residual:
    ring: str
    int: Optional[str] = None
    trace: Optional[str] = None
    int_status: Optional[str] = None
    reason: Optional[str] = None
    cond: Optional[SideCondition] = field(default=None, repr=False)

    def to_json(self, with_trace=True):
        d = {"ring": self.ring}
        if self.int is not None:
            d["int"] = self.int
            d["int_status"] = self.int_status
        if with_trace and self.trace is not None:
            d["trace"] = self.trace
        return d


@dataclass
class Verdict:
    status: str
    goal: Optional[Goal] = None
    message: str = ""
    residuals: list = field(default_factory=list)
    discharged: list = field(default_factory=list)
    difference: Optional[str] = None
    timings: dict = field(default_factory=dict)
    vm: Optional[VarMap] = field(default=None, repr=False)
    het: tuple = field(default=(), repr=False)
    poly: tuple = field(default=(), repr=False)
    normal_forms: tuple = field(default=(), repr=False)
    rule_trace: Optional[list] = field(default=None, repr=False)
    operator_atoms: int = 0
    suppressed: list = field(default_factory=list)
    field_equal: Optional[bool] = None

    @property
    def proved(self):
        return self.status in (PROVED_S, RESIDUALS_S)

    def atom_names(self):
        return [atom_name(a) for a in (self.vm or ())]

    def to_json(self, trace_level="none"):
        d = {"version": 1, "status": self.status,
             "residuals": [r.to_json(trace_level != "none") for r in self.residuals],
             "timings": {k: round(v, 3) for k, v in self.timings.items()}}
        if self.message:
            d["message"] = self.message
        if self.difference is not None:
            d["difference"] = self.difference
        if trace_level in ("normal-forms", "full") and self.normal_forms:
            d["normal_forms"] = {"lhs": self.normal_forms[0], "rhs": self.normal_forms[1]}
            d["atoms"] = self.atom_names()
        if trace_level == "full" and self.het:
            d["trace"] = {"lhs": self.poly[0], "rhs": self.poly[1],
                          "discharged": [r.to_json() for r in self.discharged]}
        return d


def atom_name(a) -> str:
    if not isinstance(a, Atom):
        return str(a)
    t = a.term
    if isinstance(t, Term):
        s = show_term(t)
        simple = t.op in ("var", "lit")
    else:
        s = het_text(t)
        simple = False
    for h in reversed(a.homs):
        if h == NAT_EMBED:
            s = f"{s if simple else '(' + s + ')'}%:R"
        elif h == INT_EMBED:
            s = f"{s if simple else '(' + s + ')'}%:~R"
        else:
            s = f"{h}({s})"
        simple = True
    return s


def het_text(e) -> str:
    """Compact infix rendering of a heterogeneous subtree (used for atom names)."""
    def expand(n, _):
        return [(k, None) for k in pp.het_children(n)], None

    def combine(n, _c, _m, r):
        t = type(n)
        if t in (pp.RX, pp.MX, pp.ZMX, pp.NX):
            return show_term(n.x) if isinstance(n.x, Term) else str(n.x)
        if t in (pp.R0, pp.MO, pp.ZM0):
            return "0"
        if t is pp.R1:
            return "1"
        if t in (pp.NC,):
            return str(n.n)
        if t is pp.RZC:
            return str(n.z)
        if t in (pp.ROpp, pp.RZOpp, pp.MOpp, pp.ZMOpp):
            return f"-({r[0]})"
        if t in (pp.RAdd, pp.RZAdd, pp.MAdd, pp.ZMAdd, pp.NAdd):
            return f"({r[0]} + {r[1]})"
        if t in (pp.RZSub, pp.MSub):
            return f"({r[0]} - {r[1]})"
        if t in (pp.RMul, pp.RZMul, pp.NMul):
            return f"({r[0]} * {r[1]})"
        if t in (pp.RMuln, pp.ZMMuln):
            return f"({r[0]} *+ {r[1]})"
        if t in (pp.RMulz, pp.ZMMulz):
            return f"({r[0]} *~ {r[1]})"
        if t in (pp.RExpn, pp.NExp):
            return f"{r[0]} ^+ {n.n}"
        if t is pp.RExpPosz:
            return f"{r[0]} ^ {n.n}"
        if t is pp.RExpNegz:
            return f"{r[0]} ^ Negz {n.n}"
        if t is pp.RZExp:
            return f"{r[0]} ^ {n.z}"
        if t is pp.RInv:
            return f"{r[0]}^-1"
        if t is pp.NSucc:
            return f"{r[0]}.+1"
        if t is pp.RPosz:
            return f"Posz {r[0]}"
        if t is pp.RNegz:
            return f"Negz {r[0]}"
        return f"{n.hom.name}({r[0]})"

    return fold(e, None, expand, combine)


def _name_fn(vm):
    names = [atom_name(a) for a in vm]

    def name(i):
        return names[i - 1] if 1 <= i <= len(names) else f"x{i}"
    return name


def _lower(het, mode, reg, target, vm):
    f = reg.identity_hom(target)
    if mode == "zmodule":
        return pp.m_to_ag(het, vm, reg, f)
    if mode == "field":
        return pp.f_norm(het, vm, reg, f)
    return pp.r_norm(het, vm, reg, f)


@gc_paused
def solve(goal: Goal, reg: Registry, mode: Optional[str] = None, record_trace=False,
          check_conversion=True) -> Verdict:
    """Decide ``goal``; see :class:`Verdict` for the possible outcomes."""
    mode = mode or goal.mode
    c = goal.carrier
    need = MODE_KIND[mode]
    try:
        reg.resolve_instance(c, need)
    except NoInstance as exc:
        return Verdict(NOINSTANCE_S, goal, message=str(exc))
    timings = {}

    t0 = time.perf_counter()
    q = Quoter(reg, mode, c, record=record_trace)
    hl, pl = q.quote(goal.lhs)
    hr, pr = q.quote(goal.rhs)
    vm = q.vm
    t1 = time.perf_counter()
    timings["reify_ms"] = (t1 - t0) * 1000

    if check_conversion:
        vm2 = VarMap()
        ll = _lower(hl, mode, reg, c, vm2)
        lr = _lower(hr, mode, reg, c, vm2)
        if not (same_tree(ll, pl) and same_tree(lr, pr) and vm2.entries == vm.entries):
            raise ConversionFailure("lowered trees differ from the reified ones")
    t2 = time.perf_counter()
    timings["preprocess_ms"] = (t2 - t1) * 1000

    name = _name_fn(vm)
    char = reg.characteristic(c)
    v = Verdict(PROVED_S, goal, timings=timings, vm=vm, het=(hl, hr), rule_trace=q.trace,
                operator_atoms=q.operator_atoms)
    if mode == "zmodule":
        diff = ag_difference(pl, pr)
        t3 = time.perf_counter()
        v.poly = (show_ag(pl), show_ag(pr))
        v.normal_forms = (list(pp_ag_norm(pl)), list(pp_ag_norm(pr)))
        if not all(k % char == 0 if char else k == 0 for k in diff):
            v.status = REFUTED_S
            v.difference = _formal_sum_text(diff, name)
    elif mode == "ring":
        nl, nr = pnorm(pl), pnorm(pr)
        t3 = time.perf_counter()
        v.poly = (show_pexpr(pl), show_pexpr(pr))
        v.normal_forms = (horner_text(nl, name), horner_text(nr, name))
        if nl != nr and not zero_mod(psub(nl, nr), char or 0):
            v.status = REFUTED_S
            v.difference = pretty(to_pexpr(psub(nl, nr)), name)
    else:
        fd = field_decide(pl, pr, char)
        t3 = time.perf_counter()
        v.poly = (show_pexpr(pl), show_pexpr(pr))
        v.field_equal = fd.equal
        v.normal_forms = (
            f"({horner_text(fd.lhs.num, name)}) / ({horner_text(fd.lhs.den, name)})",
            f"({horner_text(fd.rhs.num, name)}) / ({horner_text(fd.rhs.den, name)})")
        v.suppressed = [pretty(s.expr, name) + " != 0" for s in fd.suppressed]
        if not fd.equal:
            v.status = REFUTED_S
            v.difference = pretty(to_pexpr(fd.difference), name)
        for cond in fd.conds:
            res = Residual(pretty(cond.expr, name) + " != 0", cond=cond)
            d = reduce_diseq(cond, vm, reg, c)
            if d is not None:
                iv = decide_int_diseq(d)
                res.int, res.trace, res.int_status, res.reason = d.text(), d.trace, iv.status, iv.reason
                if iv.status == PROVED:
                    v.discharged.append(res)
                    continue
            v.residuals.append(res)
        if fd.equal and v.residuals:
            v.status = RESIDUALS_S
    timings["normalize_ms"] = (t3 - t2) * 1000
    return v


def pp_ag_norm(e):
    from .zmod import ag_norm
    return ag_norm(e)


def _formal_sum_text(fs, name):
    parts = []
    for j, k in enumerate(fs):
        if k:
            parts.append(f"{k}*{name(j + 1)}")
    return " + ".join(parts) or "0"


def reify_goal(goal: Goal, reg: Registry, mode=None, matcher="conversion", record=True):
    """Quote both sides of a goal; returns ``(quoter, (het_l, poly_l), (het_r, poly_r))``."""
    q = Quoter(reg, mode or goal.mode, goal.carrier, matcher=matcher, record=record)
    return q, q.quote(goal.lhs), q.quote(goal.rhs)
