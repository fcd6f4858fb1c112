"""Command-line front end.

Exit codes: 0 Proved, 2 ProvedWithResiduals, 3 Refuted, 1 any error
(including a goal whose carrier lacks the required instance).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .bench import BenchSpec, generate, run_bench
from .checks import run_all
from .errors import ReflError
from .reify import NOINSTANCE_S, PROVED_S, REFUTED_S, RESIDUALS_S, solve
from .surface import MODES, parse
from .theory import DEFAULT_THEORY, load_theory

EXIT = {PROVED_S: 0, RESIDUALS_S: 2, REFUTED_S: 3, NOINSTANCE_S: 1}
TRACE_LEVELS = ("none", "normal-forms", "full")
# batch exit code: the most severe outcome wins
_SEVERITY = {1: 3, 3: 2, 2: 1, 0: 0}


@dataclass
class RunConfig:
    theory_path: Optional[str] = None
    mode: Optional[str] = None
    trace_level: str = "none"
    output: str = "human"
    seed: int = 0

    def registry(self):
        text = DEFAULT_THEORY if self.theory_path is None else Path(self.theory_path).read_text()
        return load_theory(text).freeze()


def _worst(codes):
    return max(codes, key=lambda c: _SEVERITY[c], default=0)


def _human(name, v, level, out):
    print(f"{name}: {v.status}", file=out)
    if v.message:
        print(f"  {v.message}", file=out)
    if v.difference is not None:
        print(f"  difference: {v.difference}", file=out)
    for r in v.residuals:
        print(f"  residual: {r.ring}", file=out)
        if r.int is not None:
            print(f"    int: {r.int}  ({r.int_status}: {r.reason})", file=out)
    if level != "none" and v.normal_forms:
        print(f"  atoms: {', '.join(v.atom_names())}", file=out)
        print(f"  lhs normal form: {v.normal_forms[0]}", file=out)
        print(f"  rhs normal form: {v.normal_forms[1]}", file=out)
    if level == "full" and v.poly:
        print(f"  lhs reified: {v.poly[0]}", file=out)
        print(f"  rhs reified: {v.poly[1]}", file=out)
        for r in v.discharged:
            print(f"  discharged: {r.ring}  [{r.int}: {r.reason}]", file=out)
            if r.trace:
                print(f"    derivation: {r.trace}", file=out)
        for e in v.rule_trace or ():
            print(f"  rule {e.node} {e.level}: {e.rule} ({e.outcome})", file=out)


def _goal_files(paths):
    for p in map(Path, paths):
        if p.is_dir():
            yield from sorted(q for q in p.iterdir() if q.is_file() and q.suffix == ".goal")
        else:
            yield p


def _read_goal(path: Path):
    lines = [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return " ".join(ln.strip() for ln in lines)


def cmd_solve(cfg: RunConfig, paths, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        reg = cfg.registry()
    except (ReflError, OSError) as exc:
        print(f"error: theory: {exc}", file=err)
        return 1
    codes, reports = [], []
    for path in _goal_files(paths):
        try:
            goal = parse(_read_goal(path), reg, cfg.mode)
            v = solve(goal, reg, record_trace=cfg.trace_level == "full")
        except (ReflError, OSError) as exc:
            codes.append(1)
            if cfg.output == "json":
                reports.append({"file": str(path), "version": 1, "status": "Error", "message": str(exc)})
            else:
                print(f"{path}: error: {exc}", file=err)
            continue
        codes.append(EXIT[v.status])
        if cfg.output == "json":
            reports.append({"file": str(path), **v.to_json(cfg.trace_level)})
        else:
            _human(str(path), v, cfg.trace_level, out)
    if cfg.output == "json":
        doc = reports[0] if len(reports) == 1 else {"version": 1, "results": reports}
        print(json.dumps(doc, indent=2), file=out)
    if not codes:
        print("error: no goal files", file=err)
        return 1
    return _worst(codes)


def cmd_bench(cfg: RunConfig, spec: BenchSpec, emit=None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        spec.validate()
        reg = cfg.registry()
        if emit:
            Path(emit).write_text(generate(spec, cfg.seed) + "\n")
        rep = run_bench(spec, reg, cfg.seed)
    except (ReflError, AssertionError, OSError) as exc:
        print(f"error: bench: {exc}", file=err)
        return 1
    if cfg.output == "json":
        print(json.dumps(rep.to_json(), indent=2), file=out)
    else:
        print(f"bench {spec.mode} size {rep.size} (target {spec.size}, seed {cfg.seed}): {rep.status}", file=out)
        for k in ("parse_ms", "reify_ms", "preprocess_ms", "normalize_ms", "total_ms"):
            print(f"  {k:<14}{rep.timings[k]:10.1f}", file=out)
    return 0


def cmd_selftest(cfg: RunConfig, scale=1.0, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        cfg.registry()
    except (ReflError, OSError) as exc:
        print(f"error: theory: {type(exc).__name__}: {exc}", file=err)
        return 1
    results = run_all(cfg.seed, scale)
    if cfg.output == "json":
        print(json.dumps({"version": 1, "seed": cfg.seed,
                          "suites": [{"name": r.name, "cases": r.cases, "failures": r.failures}
                                     for r in results]}, indent=2), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
            for f in r.failures:
                print(f"    {f}", file=out)
    return 0 if all(r.ok for r in results) else 1


def build_parser():
    # SUPPRESS lets the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--theory", help="theory file (default: built-in int, rat, Z, F97)")
    common.add_argument("--mode", choices=MODES, help="goal mode override; ring or field for bench")
    common.add_argument("--trace", choices=TRACE_LEVELS)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int)

    ap = argparse.ArgumentParser(prog="polyrefl", description="Decide equations over declared carriers.",
                                 parents=[common])
    sub = ap.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("solve", parents=[common], help="solve goal files or directories of *.goal files")
    s.add_argument("goals", nargs="+")
    b = sub.add_parser("bench", parents=[common], help="generate and solve a large provable goal")
    b.add_argument("--size", type=int, default=8407)
    b.add_argument("--vars", type=int, default=4)
    b.add_argument("--coeff-bound", type=int, default=10 ** 13)
    b.add_argument("--emit", help="also write the generated goal to this file")
    t = sub.add_parser("selftest", parents=[common], help="run the invariant suites")
    t.add_argument("--scale", type=float, default=1.0, help="multiply the per-suite case counts")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opt = lambda k, d=None: getattr(args, k, d)  # noqa: E731
    cfg = RunConfig(opt("theory"), opt("mode"), opt("trace", "none"),
                    "json" if opt("json", False) else "human", opt("seed", 0))
    if args.cmd == "solve":
        return cmd_solve(cfg, args.goals)
    if args.cmd == "bench":
        spec = BenchSpec(args.size, args.vars, args.coeff_bound, cfg.mode or "ring")
        return cmd_bench(cfg, spec, args.emit)
    return cmd_selftest(cfg, args.scale)


if __name__ == "__main__":
    sys.exit(main())
