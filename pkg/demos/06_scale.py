"""
Large goals
===========

Generated goals of a prescribed size are solved without recursion: every
pass uses an explicit work-list.
"""

from polyrefl import default_registry
from polyrefl.bench import BenchSpec, generate, run_bench

reg = default_registry()

# a small goal to look at
print(generate(BenchSpec(60), seed=1))

for size, mode in [(8407, "ring"), (8407, "field"), (113657, "ring"), (113657, "field")]:
    rep = run_bench(BenchSpec(size, mode=mode), reg)
    t = rep.timings
    print(f"{mode:5} {rep.size:7d} {rep.status}  parse {t['parse_ms']:7.0f} ms  solve {t['solve_ms']:7.0f} ms")
