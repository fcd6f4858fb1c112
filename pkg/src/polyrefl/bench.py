"""Benchmark workloads: large provable goals of a prescribed size.

A goal is a random polynomial (or, in field mode, a sum of fractions over a
few shared denominators) on the left and an algebraically equal scrambled
copy on the right.  Scrambling commutes, re-associates, distributes and
splits constants.  The size of a goal is the number of constructors in the
two reified homogeneous trees; padding with a balanced sum of zeros brings it
to the requested count exactly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from ._tree import gc_paused, size
from .errors import BenchSpecError
from .reify import PROVED_S, solve
from .surface import parse

CARRIER = "rat"
MIN_SIZE = {"ring": 4, "field": 40}


@dataclass(frozen=True)
class BenchSpec:
    size: int
    nvars: int = 4
    coeff_bound: int = 10 ** 13
    mode: str = "ring"
    max_degree: int = 6

    def validate(self):
        if self.mode not in MIN_SIZE:
            raise BenchSpecError(f"bench mode must be ring or field, not {self.mode!r}")
        if self.size < MIN_SIZE[self.mode]:
            raise BenchSpecError(f"a {self.mode} goal needs at least {MIN_SIZE[self.mode]} constructors")
        if self.nvars < 1 or self.coeff_bound < 1 or self.max_degree < 1:
            raise BenchSpecError("nvars, coeff_bound and max_degree must be positive")


# generated trees are tuples: ("var", name) ("lit", k) ("+", a, b) ("-", a, b)
# ("neg", a) ("*", a, b) ("pow", a, n) ("/", a, b) ("inv", a)
# ("den", n, a, b) is the denominator n%:~R * a + b for an integer variable n

def tsize(t):
    """Constructors this tree contributes to the reified homogeneous tree."""
    tag = t[0]
    if tag == "var":
        return 1
    if tag == "lit":
        return 1 if t[1] in (0, 1) else 3  # numerals become 1 *+ k
    if tag in ("+", "*"):
        return 1 + tsize(t[1]) + tsize(t[2])
    if tag in ("-", "/"):
        return 2 + tsize(t[1]) + tsize(t[2])
    if tag in ("neg", "pow", "inv"):
        return 1 + tsize(t[1])
    if tag == "den":
        return 11
    raise ValueError(tag)


def render(t):
    tag = t[0]
    if tag == "var":
        return t[1]
    if tag == "lit":
        return str(t[1])
    if tag in ("+", "-", "*", "/"):
        return f"({render(t[1])} {tag} {render(t[2])})"
    if tag == "neg":
        return f"(-{render(t[1])})"
    if tag == "pow":
        return f"{render(t[1])} ^+ {t[2]}"
    if tag == "inv":
        return f"{render(t[1])}^-1"
    if tag == "den":
        return f"({t[1]}%:~R * {t[2]} + {t[3]})"
    raise ValueError(tag)


class Generator:
    def __init__(self, spec: BenchSpec, seed):
        self.spec = spec
        self.rng = random.Random(seed)
        self.vars = [f"x{i}" for i in range(spec.nvars)]

    def lit(self):
        r = self.rng
        if r.random() < 0.3:
            return ("lit", r.randint(2, 9))
        return ("lit", r.randint(2, self.spec.coeff_bound))

    def leaf(self, deg):
        if deg >= 1 and self.rng.random() < 0.6:
            return ("var", self.rng.choice(self.vars))
        return self.lit()

    def small_factor(self):
        r = self.rng
        v = ("var", r.choice(self.vars))
        return v if r.random() < 0.6 else ("+", v, ("lit", r.randint(2, 9)))

    def poly(self, budget, deg):
        """Random polynomial tree of roughly ``budget`` constructors, degree <= deg."""
        r = self.rng
        if budget <= 3:
            return self.leaf(deg)
        x = r.random()
        if deg >= 1 and x < 0.25 and budget > 6:
            f = self.small_factor()
            return ("*", f, self.poly(budget - 1 - tsize(f), deg - 1))
        if deg >= 2 and x < 0.30 and budget > 8:
            return ("pow", self.small_factor(), 2)
        if x < 0.38:
            b = budget - 2
            k = max(1, int(b * r.uniform(0.3, 0.7)))
            return ("-", self.poly(k, deg), self.poly(b - k, deg))
        b = budget - 1
        k = max(1, int(b * r.uniform(0.3, 0.7)))
        return ("+", self.poly(k, deg), self.poly(b - k, deg))

    def denominators(self):
        """Three shared denominators whose nonzero conditions zify can discharge."""
        r = self.rng
        out = []
        for i in range(3):
            a = r.randint(2, 9)
            b = r.choice([k for k in range(2, 20) if k % a])
            out.append(("den", f"n{i}", a, b))
        return out

    def fractions(self, budget):
        dens = self.denominators()
        per = max(20, min(400, budget // 8))
        terms = []
        used = 0
        while used < budget or not terms:
            d = self.rng.choice(dens)
            b = max(4, min(per, budget - used - 2 - tsize(d)))
            t = ("/", self.poly(b, self.spec.max_degree - 1), d)
            used += tsize(t) + 1
            terms.append(t)
        return _balanced_sum(terms)

    # scrambling

    def scramble(self, t):
        r = self.rng
        tag = t[0]
        if tag in ("var", "lit", "den"):
            if tag == "lit" and abs(t[1]) > 3 and r.random() < 0.15:
                k1 = r.randint(1, abs(t[1]) - 1)
                return ("+", ("lit", k1), ("lit", t[1] - k1))
            return t
        if tag in ("neg", "inv"):
            return (tag, self.scramble(t[1]))
        if tag == "pow":
            return ("pow", self.scramble(t[1]), t[2])
        a, b = self.scramble(t[1]), self.scramble(t[2])
        if tag == "+":
            if a[0] == "+" and r.random() < 0.3:
                return ("+", a[1], ("+", a[2], b))
            return ("+", b, a) if r.random() < 0.5 else ("+", a, b)
        if tag == "*":
            if b[0] == "+" and tsize(a) <= 5 and r.random() < 0.3:
                return ("+", ("*", a, b[1]), ("*", a, b[2]))
            return ("*", b, a) if r.random() < 0.5 else ("*", a, b)
        if tag == "-":
            return ("+", a, ("neg", b)) if r.random() < 0.3 else ("-", a, b)
        if tag == "/":
            return ("*", a, ("inv", b)) if r.random() < 0.5 else ("/", a, b)
        raise ValueError(tag)

    def pad(self, t, amount):
        """Add ``amount`` constructors of zeros: ``t + Z`` (even) or ``t - Z`` (odd).

        ``Z`` is a balanced sum of zeros so padding adds only logarithmic depth.
        """
        if amount < 2:
            raise BenchSpecError("cannot pad by a single constructor")
        k = amount // 2
        zeros = _balanced_sum([("lit", 0)] * k)
        return ("+" if amount % 2 == 0 else "-", t, zeros)


def _balanced_sum(terms):
    while len(terms) > 1:
        nxt = [("+", terms[i], terms[i + 1]) for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0]


@gc_paused
def generate(spec: BenchSpec, seed=0) -> str:
    """Deterministic goal text whose reified size is exactly ``spec.size``."""
    spec.validate()
    g = Generator(spec, seed)
    target = spec.size
    share = 0.45 if spec.mode == "field" else 0.68
    best = None
    for _ in range(60):
        budget = max(1, int(target * share))
        if spec.mode == "field":
            lhs = g.fractions(budget)
        else:
            lhs = g.poly(budget, spec.max_degree)
        rhs = g.scramble(lhs)
        total = tsize(lhs) + tsize(rhs)
        if total <= target - 2 or total == target:
            if best is None or total > best[2]:
                best = (lhs, rhs, total)
            if total >= 0.97 * target:
                break
            share *= min(1.5, target / total)
        else:
            share *= 0.98 * target / total
    if best is None:
        raise BenchSpecError(f"cannot build a {spec.mode} goal of size {target}")
    lhs, rhs, total = best
    rest = target - total
    if rest:
        rhs = g.pad(rhs, rest)
    return f"{render(lhs)} = {render(rhs)} : {CARRIER} [{spec.mode}]"


@dataclass
class BenchReport:
    spec: BenchSpec
    seed: int
    size: int
    status: str
    timings: dict = field(default_factory=dict)

    def to_json(self):
        return {"version": 1, "size": self.size, "target": self.spec.size, "mode": self.spec.mode,
                "seed": self.seed, "status": self.status,
                "timings": {k: round(v, 3) for k, v in self.timings.items()}}


@gc_paused
def run_bench(spec: BenchSpec, reg, seed=0, measure=True) -> BenchReport:
    t0 = time.perf_counter()
    text = generate(spec, seed)
    t1 = time.perf_counter()
    goal = parse(text, reg)
    t2 = time.perf_counter()
    v = solve(goal, reg)
    t3 = time.perf_counter()
    timings = {"generate_ms": (t1 - t0) * 1000, "parse_ms": (t2 - t1) * 1000}
    timings.update(v.timings)
    timings["solve_ms"] = (t3 - t2) * 1000
    timings["total_ms"] = (t3 - t1) * 1000
    n = -1
    if measure:
        from .reify import reify_goal
        _, (_, pl), (_, pr) = reify_goal(goal, reg, record=False)
        n = size(pl) + size(pr)
    if v.status != PROVED_S:
        raise AssertionError(f"bench goal not proved: {v.status} {v.difference}")
    return BenchReport(spec, seed, n, v.status, timings)
