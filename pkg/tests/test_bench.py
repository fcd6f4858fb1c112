import pytest

from polyrefl.bench import BenchSpec, generate, run_bench
from polyrefl.errors import BenchSpecError


def test_generate_deterministic():
    s = BenchSpec(500)
    assert generate(s, 4) == generate(s, 4)
    assert generate(s, 4) != generate(s, 5)


@pytest.mark.parametrize("size, mode", [(4, "ring"), (5, "ring"), (97, "ring"), (1500, "ring"),
                                        (40, "field"), (333, "field")])
def test_exact_size(reg, size, mode):
    rep = run_bench(BenchSpec(size, mode=mode), reg, seed=1)
    assert rep.size == size
    assert rep.status == "Proved"


@pytest.mark.parametrize("spec", [BenchSpec(3), BenchSpec(39, mode="field"), BenchSpec(100, mode="zmodule"),
                                  BenchSpec(100, nvars=0)])
def test_invalid_specs(spec):
    with pytest.raises(BenchSpecError):
        spec.validate()


def test_small_bench_under_a_millisecond(reg):
    best = min(run_bench(BenchSpec(10), reg, seed=s).timings["total_ms"] for s in range(5))
    assert best < 1.0
