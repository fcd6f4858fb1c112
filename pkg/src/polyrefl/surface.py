"""Concrete goal syntax: tokenizer, parser, elaboration and evaluation.

Goal grammar (version 1)::

    goal    := expr '=' expr [':' IDENT] ['[' MODE ']']
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/' | '*+' | '*~') unary)*
    unary   := '-' unary | postfix
    postfix := primary ('^+' NAT | '^' ['-'] NAT | '^-' NAT | '^-1'
                        | '%:R' | '%:~R' | '.+1')*
    primary := NAT | IDENT | IDENT '(' expr ')' | ('Posz' | 'Negz') postfix
             | '(' expr [':' IDENT ['@' KIND]] ')'

``·`` and ``−`` are accepted for ``*`` and ``-``.  The right operand of
``*+``/``*~`` and the operand of ``%:R``/``.+1`` are natural-number terms;
those of ``*~`` and ``%:~R`` are integer terms (carrier ``int``).

Elaboration annotates each node with its carrier and, for operator nodes,
the structure instance it was elaborated with.  Instances are inferred from
the first operand the way unification would: ``1 + x`` over ``int`` adds
through the ring instance projected to a Z-module, ``x + 1`` through the
declared Z-module instance.  ``(e : C@kind)`` forces the instance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Optional

from ._tree import fold, gc_paused
from .carriers import InstancePath, Kind, Registry
from .errors import ElaborationError, GoalSyntaxError, NoInstance, UnknownCarrier, UnknownHom

NAT = "nat"
INT = "int"
ZBIN = "Z"
MODES = ("zmodule", "ring", "field")


@dataclass(frozen=True)
class Term:
    op: str
    args: tuple = ()
    value: object = None
    carrier: Optional[str] = None
    instance: Optional[InstancePath] = field(default=None, compare=False)
    pos: int = field(default=-1, compare=False)

    def show(self):
        return show_term(self)

    def __repr__(self):
        return f"Term<{show_term(self)}{'' if self.carrier is None else ' : ' + self.carrier}>"


@dataclass
class Goal:
    lhs: Term
    rhs: Term
    carrier: str
    mode: str
    text: str = ""

    def show(self):
        return f"{show_term(self.lhs)} = {show_term(self.rhs)} : {self.carrier} [{self.mode}]"


# tokens ----------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>%:~R|%:R|\.\+1|\^\+|\^-|\*\+|\*~|[-+*/^()=:\[\]@])
""", re.VERBOSE)

_ALIASES = {"·": "*", "−": "-", "⋅": "*"}


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | op | eof
    text: str
    pos: int


def tokenize(text):
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _ALIASES:
            out.append(Token("op", _ALIASES[ch], i))
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise GoalSyntaxError(i, {"a token"}, ch)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), i))
        i = m.end()
    out.append(Token("eof", "", n))
    return out


# parser ----------------------------------------------------------------------

_PRIMARY_START = {"NUM", "IDENT", "'('", "'-'"}


class Parser:
    def __init__(self, text, registry: Optional[Registry] = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.reg = registry

    # helpers

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise GoalSyntaxError(t.pos, expected, t.text if t.kind != "eof" else "end of input")

    def accept(self, text):
        t = self.tok
        if t.kind == "op" and t.text == text:
            self.i += 1
            return t
        return None

    def expect(self, text):
        t = self.accept(text)
        if t is None:
            self.fail({repr(text)})
        return t

    def nat(self):
        t = self.tok
        if t.kind != "num":
            self.fail({"NUM"})
        self.i += 1
        return int(t.text)

    def ident(self):
        t = self.tok
        if t.kind != "ident":
            self.fail({"IDENT"})
        self.i += 1
        return t.text

    # grammar

    def goal(self):
        lhs = self.expr()
        if not self.accept("="):
            self.fail({"'='", "'+'", "'-'", "'*'", "'/'"})
        rhs = self.expr()
        carrier = None
        mode = None
        if self.accept(":"):
            carrier = self.ident()
        if self.accept("["):
            t = self.tok
            name = self.ident()
            if name not in MODES:
                raise GoalSyntaxError(t.pos, {repr(m) for m in MODES}, name)
            mode = name
            self.expect("]")
        if self.tok.kind != "eof":
            exp = {"end of input"}
            if carrier is None and mode is None:
                exp |= {"':'", "'['"}
            self.fail(exp)
        return lhs, rhs, carrier, mode

    def expr(self):
        left = self.term()
        while True:
            t = self.tok
            if self.accept("+"):
                left = Term("add", (left, self.term()), pos=t.pos)
            elif self.accept("-"):
                left = Term("sub", (left, self.term()), pos=t.pos)
            else:
                return left

    def term(self):
        left = self.unary()
        while True:
            t = self.tok
            if self.accept("*"):
                left = Term("mul", (left, self.unary()), pos=t.pos)
            elif self.accept("/"):
                left = Term("div", (left, self.unary()), pos=t.pos)
            elif self.accept("*+"):
                left = Term("natmul", (left, self.unary()), pos=t.pos)
            elif self.accept("*~"):
                left = Term("intmul", (left, self.unary()), pos=t.pos)
            else:
                return left

    def unary(self):
        t = self.tok
        if self.accept("-"):
            return Term("opp", (self.unary(),), pos=t.pos)
        return self.postfix()

    def postfix(self):
        e = self.primary()
        while True:
            t = self.tok
            if self.accept("^+"):
                e = Term("exp", (e,), self.nat(), pos=t.pos)
            elif self.accept("^-"):
                n = self.nat()
                e = Term("inv", (e,), pos=t.pos) if n == 1 else Term("expneg", (e,), n, pos=t.pos)
            elif self.accept("^"):
                neg = self.accept("-") is not None
                n = self.nat()
                e = Term("exprz", (e,), -n if neg else n, pos=t.pos)
            elif self.accept("%:R"):
                e = Term("natr", (e,), pos=t.pos)
            elif self.accept("%:~R"):
                e = Term("intr", (e,), pos=t.pos)
            elif self.accept(".+1"):
                e = Term("succ", (e,), pos=t.pos)
            else:
                return e

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Term("lit", (), int(t.text), pos=t.pos)
        if t.kind == "ident":
            self.i += 1
            if t.text in ("Posz", "Negz"):
                return Term(t.text.lower(), (self.postfix(),), pos=t.pos)
            if self.tok.kind == "op" and self.tok.text == "(":
                if self.reg is not None and t.text not in self.reg.homs:
                    raise UnknownHom(f"unknown hom {t.text!r} at position {t.pos}")
                self.i += 1
                arg = self.expr()
                self.expect(")")
                return Term("app", (arg,), t.text, pos=t.pos)
            return Term("var", (), t.text, pos=t.pos)
        if self.accept("("):
            e = self.expr()
            if self.accept(":"):
                ct = self.tok
                c = self.ident()
                kind = None
                if self.accept("@"):
                    kt = self.tok
                    k = self.ident()
                    try:
                        kind = Kind(k)
                    except ValueError:
                        raise GoalSyntaxError(kt.pos, {"a structure kind"}, k) from None
                if self.reg is not None and c not in self.reg.carriers:
                    raise UnknownCarrier(f"unknown carrier {c!r} at position {ct.pos}")
                e = Term("asc", (e,), (c, kind), pos=ct.pos)
                self.expect(")")
                return e
            if not self.accept(")"):
                self.fail({"')'", "':'", "'+'", "'-'", "'*'", "'/'"})
            return e
        self.fail(_PRIMARY_START)


# elaboration -------------------------------------------------------------------

_OP_KIND = {
    "zero": Kind.zmodType, "add": Kind.zmodType, "sub": Kind.zmodType,
    "opp": Kind.zmodType, "natmul": Kind.zmodType, "intmul": Kind.zmodType,
    "one": Kind.ringType, "mul": Kind.ringType, "exp": Kind.ringType,
    "natr": Kind.ringType, "intr": Kind.ringType, "lit": Kind.ringType,
    "inv": Kind.unitRingType, "div": Kind.unitRingType,
    "expneg": Kind.unitRingType, "exprz": Kind.unitRingType,
}

_NAT_OPS = {"lit", "var", "add", "mul", "exp", "succ"}


def _top_carrier(t: Term, reg: Registry):
    if t.op == "asc":
        return t.value[0]
    if t.op == "app":
        return reg.hom(t.value).cod
    return None


def elaborate(t: Term, level: str, reg: Registry) -> Term:
    """Annotate ``t`` (expected at carrier ``level``) with carriers and instances."""

    def expand(n, ctx):
        lvl, _force = ctx
        op = n.op
        if op == "asc":
            c, kind = n.value
            if c != lvl:
                raise ElaborationError(f"term ascribed {c} at position {n.pos} is used at {lvl}")
            src = None
            if kind is not None:
                if not reg.has_instance(c, kind):
                    raise NoInstance(f"{c} has no {kind} instance (position {n.pos})")
                src = InstancePath(c, kind, ())
            return [(n.args[0], (c, src))], src
        if lvl == NAT:
            if op not in _NAT_OPS:
                raise ElaborationError(f"operator {op!r} at position {n.pos} is not available on nat")
            if op == "exp":
                return [(n.args[0], (NAT, None))], None
            return [(a, (NAT, None)) for a in n.args], None
        if op == "app":
            h = reg.hom(n.value)
            if h.cod != lvl:
                raise ElaborationError(f"hom {h.name} lands in {h.cod}, expected {lvl} (position {n.pos})")
            return [(n.args[0], (h.dom, None))], None
        if op in ("posz", "negz"):
            if lvl != INT:
                raise ElaborationError(f"{op} at position {n.pos} builds an int, expected {lvl}")
            return [(n.args[0], (NAT, None))], None
        if op == "succ":
            raise ElaborationError(f".+1 at position {n.pos} needs a nat, expected {lvl}")
        if op == "natr":
            return [(n.args[0], (NAT, None))], None
        if op == "intr":
            return [(n.args[0], (INT, None))], None
        if op == "natmul":
            return [(n.args[0], (lvl, None)), (n.args[1], (NAT, None))], None
        if op == "intmul":
            return [(n.args[0], (lvl, None)), (n.args[1], (INT, None))], None
        return [(a, (lvl, None)) for a in n.args], None

    def combine(n, ctx, memo, results):
        lvl, force = ctx
        op = n.op
        if op == "asc":
            inner, _ = results[0]
            return inner, memo
        args = tuple(r[0] for r in results)
        if lvl == NAT:
            if op == "lit" and n.value < 0:
                raise ElaborationError("negative natural")
            return replace(n, args=args, carrier=NAT, instance=None), None
        if lvl not in reg.carriers:
            raise UnknownCarrier(f"unknown carrier {lvl!r}")
        if op == "lit":
            if lvl == ZBIN or (reg.carriers[lvl].semantics.kind == "integers" and n.value > 1):
                # numerals of the integer carriers are constructors, not ring images
                return replace(n, carrier=lvl, instance=None), None
            op = "zero" if n.value == 0 else "one" if n.value == 1 else "lit"
        kind = _OP_KIND.get(op)
        if kind is None:  # var, app, posz, negz
            return replace(n, op=op, args=args, carrier=lvl, instance=None), None
        if not reg.has_instance(lvl, kind):
            raise NoInstance(f"{op} at position {n.pos} needs a {kind} instance on {lvl}")
        src = force
        if src is None and results and op not in ("natr", "intr"):
            src = results[0][1]
        inst = None
        if src is not None and src.base == lvl:
            try:
                inst = src.project(kind)
            except NoInstance:
                inst = None
        if inst is None:
            inst = InstancePath(lvl, kind, ())
        return replace(n, op=op, args=args, carrier=lvl, instance=inst), inst

    return fold(t, (level, None), expand, combine)[0]


@gc_paused
def parse(text: str, registry: Registry, mode: Optional[str] = None) -> Goal:
    """Parse and elaborate a goal.  ``mode`` overrides the goal's own."""
    p = Parser(text, registry)
    lhs, rhs, carrier, gmode = p.goal()
    if carrier is None:
        carrier = _top_carrier(lhs, registry) or _top_carrier(rhs, registry)
        if carrier is None:
            raise ElaborationError("cannot infer the carrier; add ': <carrier>' to the goal")
    registry.carrier(carrier)
    g = Goal(elaborate(lhs, carrier, registry), elaborate(rhs, carrier, registry),
             carrier, mode or gmode or "ring", text)
    return g


# printing ----------------------------------------------------------------------

_LEVEL = {"add": 1, "sub": 1, "mul": 2, "div": 2, "natmul": 2, "intmul": 2,
          "opp": 3, "posz": 4, "negz": 4}
_INFIX = {"add": "+", "sub": "-", "mul": "*", "div": "/", "natmul": "*+", "intmul": "*~"}


def show_term(t: Term) -> str:
    def expand(n, _):
        return [(a, None) for a in n.args], None

    def combine(n, _c, _m, r):
        op = n.op

        def par(x, need):
            return x[0] if x[1] >= need else f"({x[0]})"

        if op in ("var",):
            return (str(n.value), 6)
        if op == "lit":
            return (str(n.value), 6)
        if op == "zero":
            return ("0", 6)
        if op == "one":
            return ("1", 6)
        if op in _INFIX:
            lv = _LEVEL[op]
            return (f"{par(r[0], lv)} {_INFIX[op]} {par(r[1], lv + 1)}", lv)
        if op == "opp":
            return (f"-{par(r[0], 3)}", 3)
        if op == "exp":
            return (f"{par(r[0], 6)} ^+ {n.value}", 5)
        if op == "exprz":
            return (f"{par(r[0], 6)} ^ {n.value}", 5)
        if op == "expneg":
            return (f"{par(r[0], 6)} ^- {n.value}", 5)
        if op == "inv":
            return (f"{par(r[0], 6)}^-1", 5)
        if op == "natr":
            return (f"{par(r[0], 6)}%:R", 5)
        if op == "intr":
            return (f"{par(r[0], 6)}%:~R", 5)
        if op == "succ":
            return (f"{par(r[0], 6)}.+1", 5)
        if op in ("posz", "negz"):
            return (f"{op.capitalize()} {par(r[0], 5)}", 4)
        if op == "app":
            return (f"{n.value}({r[0][0]})", 6)
        if op == "asc":
            c, k = n.value
            return (f"({r[0][0]} : {c}{'' if k is None else '@' + str(k)})", 6)
        raise ValueError(f"unknown op {op}")

    return fold(t, None, expand, combine)[0]


# evaluation --------------------------------------------------------------------

def free_vars(*terms):
    """``{name: carrier}`` for every variable (first carrier seen wins)."""
    out = {}
    stack = list(reversed(terms))
    while stack:
        t = stack.pop()
        if t.op == "var":
            out.setdefault(t.value, t.carrier)
        stack.extend(reversed(t.args))
    return out


def surface_eval(t: Term, env, reg: Registry):
    """Value of an elaborated term; ``env`` maps variable names to values."""
    def expand(n, _):
        return [(a, None) for a in n.args], None

    def combine(n, _c, _m, r):
        op = n.op
        if n.carrier == NAT:
            if op == "lit":
                return n.value
            if op == "var":
                return int(env[n.value])
            if op == "add":
                return r[0] + r[1]
            if op == "mul":
                return r[0] * r[1]
            if op == "exp":
                return r[0] ** n.value
            if op == "succ":
                return r[0] + 1
            raise ValueError(op)
        d = reg.domain(n.carrier)
        if op == "var":
            return d.coerce(env[n.value])
        if op == "lit":
            return d.from_int(n.value)
        if op == "zero":
            return d.zero()
        if op == "one":
            return d.one()
        if op == "add":
            return d.add(r[0], r[1])
        if op == "sub":
            return d.sub(r[0], r[1])
        if op == "opp":
            return d.neg(r[0])
        if op == "mul":
            return d.mul(r[0], r[1])
        if op == "div":
            return d.mul(r[0], d.inv(r[1]))
        if op == "inv":
            return d.inv(r[0])
        if op == "exp":
            return d.pow(r[0], n.value)
        if op == "exprz":
            return d.exprz(r[0], n.value)
        if op == "expneg":
            return d.inv(d.pow(r[0], n.value))
        if op == "natmul":
            return d.natmul(r[0], r[1])
        if op == "intmul":
            return d.intmul(r[0], r[1])
        if op in ("natr", "intr"):
            return d.from_int(r[0])
        if op == "posz":
            return d.from_int(r[0])
        if op == "negz":
            return d.from_int(-(r[0] + 1))
        if op == "app":
            return reg.hom(n.value)(r[0])
        raise ValueError(f"unknown op {op}")

    return fold(t, None, expand, combine)
