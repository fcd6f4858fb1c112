import random

from polyrefl.checks import SUITES, run_all, suite_pushdown


def test_run_all_small_scale():
    results = run_all(seed=11, scale=0.1)
    assert len(results) == len(SUITES)
    for r in results:
        assert r.ok, r.failures


def test_suite_line_format():
    r = suite_pushdown(random.Random(0), 5)
    assert r.line().startswith("PASS pushdown preserves values: 10 cases, 0 failures")


def test_ten_seeds_pass():
    for seed in range(10):
        assert all(r.ok for r in run_all(seed=seed, scale=0.03)), seed
