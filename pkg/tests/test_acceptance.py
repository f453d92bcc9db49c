"""The twelve acceptance criteria at their stated tolerances.

One status line per criterion is printed in the terminal summary.
"""
import pytest

from elastocap import suite

REPORT: list = []


@pytest.fixture(scope="module")
def results():
    cfg = suite.SuiteConfig()
    assert cfg.tolerance_scale == 1.0
    out = {r.number: r for r in suite.run(cfg)}
    REPORT[:] = [out[n].line() for n in sorted(out)]
    return out


@pytest.mark.parametrize("number", range(1, 13), ids=lambda n: f"criterion_{n:02d}_{suite.NAMES[n].replace(' ', '_')}")
def test_criterion(results, number):
    r = results[number]
    assert not r.skipped, r.line()
    assert r.passed, r.line()
