"""Invariant suites shared by ``selftest`` and the test-suite.

Each suite takes a :class:`random.Random` and a case count and returns a
:class:`SuiteResult` listing the failing cases.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import horner as H
from .bench import render
from .carriers import PARENTS, IntegerDomain, Kind, ModularDomain, inherits
from .errors import StructureLawViolation
from .fuzz import (FUZZ_CARRIERS, perturb, rand_ag, rand_m, rand_pexpr, rand_r,
                   ring_identity)
from .oracle import dense_expand, find_counterexample
from .preprocess import (MEXPR, MMorph, MSub, MX, NC, RMorph, RNegz, RX, RZExp, f_norm,
                         het_eval, identity, m_norm, m_to_ag, r_norm, varmap_values)
from .reify import PROVED_S, REFUTED_S, reify_goal, solve
from .surface import parse, surface_eval
from .theory import DEFAULT_THEORY, load_theory
from .zmod import VarMap, ag_decide, ag_eval, ag_norm, ag_subst, zmod_ops

MAX_FAILURES = 20


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def fail(self, msg):
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(msg)

    def line(self):
        mark = "PASS" if self.ok else "FAIL"
        return f"{mark} {self.name}: {self.cases} cases, {len(self.failures)} failures, {self.seconds:.2f}s"


def _timed(name):
    def wrap(fn):
        def run(*args, **kw):
            res = SuiteResult(name)
            t0 = time.perf_counter()
            fn(res, *args, **kw)
            res.seconds = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed("hierarchy")
def suite_hierarchy(res, rng, n=0):
    """Reflexive/transitive inheritance and law sampling on a bad theory."""
    kinds = list(Kind)
    for a in kinds:
        res.cases += 1
        if not inherits(a, a):
            res.fail(f"{a} does not inherit from itself")
        for p in PARENTS.get(a, ()):
            if not inherits(a, p):
                res.fail(f"{a} misses parent {p}")
            for q in kinds:
                if inherits(p, q) and not inherits(a, q):
                    res.fail(f"transitivity {a} < {p} < {q}")
    res.cases += 1
    try:
        load_theory(DEFAULT_THEORY + "hom bad : additive int -> int = mod 5\n")
        res.fail("non-additive hom accepted")
    except StructureLawViolation:
        pass


def _ag_values(rng, d, nv):
    if isinstance(d, ModularDomain):
        return [rng.randrange(d.m) for _ in range(nv)]
    return [rng.randint(-10 ** 6, 10 ** 6) for _ in range(nv)]


@_timed("ag_subst . ag_norm = ag_eval")
def suite_ag(res, rng, n=1000, doms=None):
    doms = doms or (IntegerDomain(), ModularDomain(2), ModularDomain(5), ModularDomain(97))
    for _ in range(n):
        res.cases += 1
        d = rng.choice(doms)
        nv = rng.randint(1, 6)
        e = rand_ag(rng, nv, rng.randint(1, 30))
        vals = _ag_values(rng, d, nv)
        zero, opp, add = zmod_ops(d)
        lhs = ag_subst(zero, opp, add, vals, ag_norm(e))
        rhs = ag_eval(zero, opp, add, vals, e)
        if lhs != rhs:
            res.fail(f"{e} at {vals}: {lhs} != {rhs}")


@_timed("ag_decide sound and complete over Z")
def suite_ag_decide(res, rng, n=500):
    z = IntegerDomain()
    ops = zmod_ops(z)
    for _ in range(n):
        res.cases += 1
        nv = rng.randint(1, 3)
        e1, e2 = rand_ag(rng, nv, rng.randint(1, 8)), rand_ag(rng, nv, rng.randint(1, 8))
        ev = lambda e: lambda p: ag_eval(*ops, list(p), e)  # noqa: E731
        if ag_decide(e1, e2):
            vals = _ag_values(rng, z, nv)
            if ag_eval(*ops, vals, e1) != ag_eval(*ops, vals, e2):
                res.fail(f"unsound: {e1} vs {e2}")
        elif find_counterexample(ev(e1), ev(e2), nv, max_radius=1) is None:
            res.fail(f"no witness for {e1} vs {e2}")


_EVAL_DOMAINS = (IntegerDomain(), ModularDomain(97))


@_timed("horner oracle")
def suite_horner(res, rng, n=1000):
    """pnorm against dense expansion; pnorm idempotence."""
    for _ in range(n):
        res.cases += 1
        e = rand_pexpr(rng, nvars=4, max_deg=12, size=rng.randint(1, 30))
        p = H.pnorm(e)
        if H.dense_monomials(p, 4) != dense_expand(e, 4):
            res.fail(f"oracle mismatch on {H.show(e)}")
        if H.pnorm(H.to_pexpr(p)) != p:
            res.fail(f"not idempotent on {H.show(e)}")
        for d in _EVAL_DOMAINS:
            vals = _ag_values(rng, d, 4)
            if H.poly_eval(p, vals, d) != H.peval(e, vals, d):
                res.fail(f"evaluation differs on {H.show(e)} at {vals}")


def directed_pushdown(reg):
    """Hand-built cases: composition, MSub, negative Z exponent, Negz."""
    red, zq, emb = reg.hom("red97"), reg.hom("ZtoQ"), reg.hom("embed_ZQ")
    return [
        MMorph("int", "rat", emb, MMorph("int", "int", reg.hom("triple_i"), MSub("int", MX("int", 5), MX("int", 2)))),
        MMorph("int", "F97", red, MSub("int", MX("int", 100), MX("int", 2))),
        RZExp(RX("Z", 3), -1),
        RNegz(NC(4)),
        RMorph("Z", "rat", zq, RZExp(RX("Z", 2), -3)),
    ]


@_timed("pushdown preserves values")
def suite_pushdown(res, rng, n=1000, reg=None):
    from .fuzz import fuzz_registry
    reg = reg or fuzz_registry()
    cases = directed_pushdown(reg)
    for _ in range(n):
        c = rng.choice(FUZZ_CARRIERS[:3])
        if rng.random() < 0.3:
            cases.append(rand_m(rng, reg, c, rng.randint(1, 12)))
        else:
            cases.append(rand_r(rng, reg, c, rng.randint(1, 14)))
    for e in cases:
        res.cases += 1
        c = e.carrier
        d = reg.domain(c)
        v0 = het_eval(e, reg)
        if isinstance(e, MEXPR):
            if m_norm(identity(reg, c), e, reg) != v0:
                res.fail(f"m_norm changed the value of {e}")
            vm = VarMap()
            a = m_to_ag(e, vm, reg)
            if ag_eval(*zmod_ops(d), varmap_values(vm, reg, c), a) != v0:
                res.fail(f"m_to_ag changed the value of {e}")
            continue
        lowerings = (r_norm, f_norm) if reg.has_instance(c, Kind.fieldType) else (r_norm,)
        for fn in lowerings:
            vm = VarMap()
            p = fn(e, vm, reg)
            if H.peval(p, varmap_values(vm, reg, c), d) != v0:
                res.fail(f"{fn.__name__} changed the value of {e}")


def _chain_ok(goal, reg, env):
    """Surface value, het value, PExpr value and normal-form value all agree."""
    c = goal.carrier
    d = reg.domain(c)
    leaf = lambda t, _c: surface_eval(t, env, reg)  # noqa: E731
    q, (hl, pl), (hr, pr) = reify_goal(goal, reg, record=False)
    vals = varmap_values(q.vm, reg, c, leaf)
    for side, het, poly in ((goal.lhs, hl, pl), (goal.rhs, hr, pr)):
        s = surface_eval(side, env, reg)
        if het_eval(het, reg, leaf) != s or H.peval(poly, vals, d) != s:
            return False
        if goal.mode == "ring" and H.poly_eval(H.pnorm(poly), vals, d) != s:
            return False
    return True


@_timed("correctness chain")
def suite_chain(res, rng, n=1000, reg=None):
    from .fuzz import fuzz_registry
    reg = reg or fuzz_registry()
    for _ in range(n):
        res.cases += 1
        c = rng.choice(("rat", "int", "Z"))
        _, _, text = ring_identity(rng, rng.randint(3, 24), 3, c)
        goal = parse(text, reg)
        env = {f"x{i}": rng.randint(-20, 20) for i in range(3)}
        if not _chain_ok(goal, reg, env):
            res.fail(text)


@_timed("soundness fuzzing")
def suite_soundness(res, rng, n=1000, reg=None):
    """Scrambled identities are Proved; perturbed ones are Refuted with a witness."""
    from .theory import default_registry
    reg = reg or default_registry()
    names = ["x0", "x1", "x2"]
    for _ in range(n):
        c = rng.choice(("rat", "int", "Z"))
        lhs, rhs, text = ring_identity(rng, rng.randint(3, 30), 3, c)
        res.cases += 1
        v = solve(parse(text, reg), reg)
        if v.status != PROVED_S:
            res.fail(f"not proved: {text}")
        bad = f"{render(lhs)} = {render(perturb(rng, lhs, rhs))} : {c} [ring]"
        g = parse(bad, reg)
        res.cases += 1
        v = solve(g, reg)
        if v.status != REFUTED_S:
            res.fail(f"not refuted: {bad}")
            continue
        ev = lambda t: lambda p: surface_eval(t, dict(zip(names, p)), reg)  # noqa: E731
        if find_counterexample(ev(g.lhs), ev(g.rhs), 3) is None:
            res.fail(f"no counterexample: {bad}")


def worked_examples(reg):
    """The worked goals and their expected statuses."""
    return [
        ("(x + (-y)) + x = (-y) + (x + x) : int [zmodule]", PROVED_S),
        ("((x : int@ringType) + y) - z = (x + y : int@zmodType) - z : int [zmodule]", PROVED_S),
        ("6%:R * 6%:R = (Posz 6 * 6)%:~R : rat [ring]", PROVED_S),
        ("((n^+2)%:R - 1)/(n%:R - 1) = n%:R + 1 : rat [field]", "ProvedWithResiduals"),
        ("((n^+2)%:R*2 - 1 + n%:R*2 - n%:R)/(n%:R*2 - 1) = n%:R + 1 : rat [field]", PROVED_S),
        ("x * y = y * x + 1 : rat [ring]", REFUTED_S),
    ]


@_timed("worked examples")
def suite_examples(res, rng, n=0, reg=None):
    from .theory import default_registry
    reg = reg or default_registry()
    for text, want in worked_examples(reg):
        res.cases += 1
        got = solve(parse(text, reg), reg).status
        if got != want:
            res.fail(f"{text}: {got}, expected {want}")


SUITES = (suite_hierarchy, suite_ag, suite_ag_decide, suite_horner, suite_pushdown, suite_chain,
          suite_soundness, suite_examples)


def run_all(seed=0, scale=1.0):
    """Run every suite with ``max(1, int(base * scale))`` cases each."""
    base = {suite_ag: 1000, suite_ag_decide: 300, suite_horner: 500, suite_pushdown: 500, suite_chain: 300,
            suite_soundness: 300}
    out = []
    for i, s in enumerate(SUITES):
        rng = random.Random(f"{seed}:{i}")
        out.append(s(rng, max(1, int(base.get(s, 0) * scale))))
    return out
