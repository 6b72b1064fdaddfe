from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corrfun.counting import (
    count_report,
    sandwich_bruteforce,
    sandwich_formula,
    surjections_bruteforce,
    surjections_formula,
    surjections_formula_j,
)
from corrfun.errors import CapacityError, InputError


def test_surjection_examples():
    assert surjections_formula(3, 2) == 6
    assert surjections_formula(0, 0) == 1
    assert surjections_formula(2, 3) == 0
    assert all(surjections_formula(x, 1) == 1 for x in range(1, 8))
    assert surjections_formula(0, 1) == 0


def test_sandwich_examples():
    assert sandwich_formula(3, 1, 2) == 7
    assert all(sandwich_formula(x, 0, g) == g**x for x in range(5) for g in range(4))
    assert all(sandwich_formula(x, g, g) == surjections_formula(x, g) for x in range(6) for g in range(5))
    with pytest.raises(InputError):
        sandwich_formula(2, 3, 2)


@pytest.mark.parametrize("x", range(7))
def test_formulas_match_bruteforce(x):
    for e in range(5):
        assert surjections_formula(x, e) == surjections_bruteforce(x, e) == surjections_formula_j(x, e)
        for g in range(e, 5):
            assert sandwich_formula(x, e, g) == sandwich_bruteforce(x, e, g)


@given(st.integers(0, 40), st.integers(0, 12))
def test_formula_properties(x, e):
    s = surjections_formula(x, e)
    assert s >= 0
    assert (s == 0) == (e > x or (x > 0 and e == 0))
    assert s == surjections_formula_j(x, e)
    # every map to an e-set is a surjection onto its image
    if e <= 8:
        from math import comb

        assert sum(comb(e, i) * surjections_formula(x, i) for i in range(e + 1)) == e**x


def test_guards():
    with pytest.raises(InputError):
        surjections_formula(-1, 2)
    with pytest.raises(CapacityError):
        surjections_bruteforce(30, 4)
    with pytest.raises(CapacityError):
        sandwich_bruteforce(30, 1, 4)


def test_count_report():
    rpt = count_report(3, 2)
    assert rpt.ok and rpt.to_json() == {"x": 3, "e": 2, "g": None, "formula": 6, "bruteforce": 6, "ok": True}
    big = count_report(40, 3)
    assert big.bruteforce_value is None and big.ok
    assert count_report(3, 1, 2).formula_value == 7
