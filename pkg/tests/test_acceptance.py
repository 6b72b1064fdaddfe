"""The twelve acceptance criteria, each with its time budget.

Every test prints one PASS/FAIL line (outside output capture) so the
summary is visible in a plain ``pytest -v`` run.
"""

from __future__ import annotations

import time

import pytest

from corrfun.suites import SuiteOptions, run_suite

CRITERIA = [
    (1, "constant functor", "constant", 1),
    (2, "singleton example", "example", 30),
    (3, "counting formulas", "counts", 5),
    (4, "exponential bounds", "bounds", 300),
    (5, "fundamental-module law", "fundamental", 120),
    (6, "permuted-orders associativity", "associativity", 120),
    (7, "duality", "duality", 180),
    (8, "preorder quotient", "preorder", 60),
    (9, "induction isomorphism", "induction", 300),
    (10, "J-vanishing", "jvanish", 120),
    (11, "composition isomorphism", "composition", 60),
    (12, "minimal-set law", "minimal-set", 120),
]


@pytest.mark.parametrize("number, title, suite, budget", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(number, title, suite, budget, capsys):
    start = time.perf_counter()
    result = run_suite(suite, SuiteOptions(seed=0))
    elapsed = time.perf_counter() - start
    ok = result.passed and elapsed < budget
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n[{status}] criterion {number:2d} {title}: {result.checks} checks, {elapsed:.2f}s (budget {budget}s)")
        if result.counterexample is not None:
            print(f"  counterexample: {result.counterexample}")
    assert result.passed, result.counterexample
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
