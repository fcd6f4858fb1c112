"""One test per primary acceptance criterion, each at its stated tolerance."""

import io
import random
import time

from polyrefl.bench import BenchSpec
from polyrefl.carriers import IntegerDomain, ModularDomain
from polyrefl.checks import (directed_pushdown, suite_ag, suite_horner, suite_pushdown,
                             suite_soundness)
from polyrefl.cli import RunConfig, cmd_bench, main
from polyrefl.fuzz import fuzz_registry
from polyrefl.preprocess import het_eval
from polyrefl.reify import PROVED_S, RESIDUALS_S, reify_goal, solve
from polyrefl.surface import parse
from polyrefl.theory import default_registry
from polyrefl.zify import RESIDUAL, recognize

E1 = "AGAdd (AGAdd (AGX 0) (AGOpp (AGX 1))) (AGX 0)"
E2 = "AGAdd (AGOpp (AGX 1)) (AGAdd (AGX 0) (AGX 0))"


def _best_ms(fn, runs=5):
    best = float("inf")
    for _ in range(runs):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, (time.perf_counter() - t0) * 1000)
    return out, best


def test_formal_sum_example(reg, criterion):
    text = "(x + (-y)) + x = (-y) + (x + x) : int [zmodule]"
    v, ms = _best_ms(lambda: solve(parse(text, reg), reg))
    ok = v.status == PROVED_S and v.poly == (E1, E2) and ms < 10
    criterion("zmodule example trees and runtime", ok, f"{v.status}, {ms:.2f} ms")


def test_aliasing(reg, criterion):
    g = parse("((x : int@ringType) + y) - z = (x + y : int@zmodType) - z : int [zmodule]", reg)
    q, _, _ = reify_goal(g, reg)
    v = solve(g, reg)
    ok = q.operator_atoms == 0 and v.status == PROVED_S
    criterion("instance aliasing", ok, f"{q.operator_atoms} operator atoms, {v.status}")


def test_ag_norm_subst(criterion):
    t0 = time.perf_counter()
    r = suite_ag(random.Random(2024), 10_000, doms=(IntegerDomain(), ModularDomain(97)))
    s = time.perf_counter() - t0
    criterion("ag_subst . ag_norm = ag_eval", r.ok and r.cases == 10_000 and s < 30,
              f"{r.cases} cases, {len(r.failures)} failures, {s:.1f} s")


def test_pushdown(criterion):
    freg = fuzz_registry()
    d = directed_pushdown(freg)
    directed = [het_eval(e, freg) for e in d[2:4]] == [0, -5]
    r = suite_pushdown(random.Random(2024), 1000, reg=freg)
    criterion("pushdown correctness", r.ok and directed and r.cases >= 1000,
              f"{r.cases} cases, {len(r.failures)} failures")


def test_horner_oracle(criterion):
    r = suite_horner(random.Random(2024), 1000)
    criterion("horner oracle and idempotence", r.ok and r.cases == 1000,
              f"{r.cases} cases, {len(r.failures)} failures")


def test_field_example(reg, criterion, tmp_path, capsys):
    v = solve(parse("((n^+2)%:R - 1)/(n%:R - 1) = n%:R + 1 : rat [field]", reg), reg)
    ok = (v.status == RESIDUALS_S and v.field_equal and len(v.residuals) == 1
          and v.residuals[0].int == "n != 1 : int" and v.residuals[0].int_status == RESIDUAL)
    p = tmp_path / "variant.goal"
    p.write_text("((n^+2)%:R*2 - 1 + n%:R*2 - n%:R)/(n%:R*2 - 1) = n%:R + 1 : rat [field]\n")
    code = main(["solve", str(p), "--trace", "full"])
    out = capsys.readouterr().out
    ok = ok and code == 0 and "2 * n != 1 : int" in out
    criterion("field side conditions", ok, f"residual {v.residuals[0].int!r}, variant exit {code}")


def test_embedding_coherence(criterion):
    reg = default_registry()
    rat = reg.domain("rat")
    rat.ops = 0
    text = "6%:R * 6%:R = (Posz 6 * 6)%:~R : rat [ring]"
    v, ms = _best_ms(lambda: solve(parse(text, reg), reg))
    ok = v.status == PROVED_S and rat.ops == 0 and ms < 10
    criterion("embedding coherence", ok, f"{v.status}, {rat.ops} rat operations, {ms:.2f} ms")


def test_zify_trace(reg, criterion):
    g = parse("1 + n%:~R * 2 = 0 : rat [ring]", reg)
    q, (_, pl), _ = reify_goal(g, reg)
    w = recognize(pl, q.vm, reg, "rat")
    got = str(w.trace)
    criterion("zify derivation", got == "zify_add(zify_one, zify_mulrz(zify_mulrz(zify_one, n), 2))", got)


def _bench(size, mode, limit_s):
    out, err = io.StringIO(), io.StringIO()
    t0 = time.perf_counter()
    code = cmd_bench(RunConfig(), BenchSpec(size, mode=mode), out=out, err=err)
    s = time.perf_counter() - t0
    return code == 0 and s < limit_s and "Proved" in out.getvalue(), s


def test_scale(criterion):
    rows = [(8407, "ring", 2), (8407, "field", 2), (113657, "ring", 10), (113657, "field", 10)]
    results = [(n, m, *_bench(n, m, lim)) for n, m, lim in rows]
    detail = ", ".join(f"{n} {m} {s:.2f} s" for n, m, _, s in results)
    criterion("bench scale", all(r[2] for r in results), detail)


def test_soundness(criterion):
    r = suite_soundness(random.Random(2024), 10_000)
    criterion("soundness fuzzing", r.ok and r.cases == 20_000,
              f"{r.cases} cases, {len(r.failures)} failures")
