"""Inclusion-exclusion counts of surjections and sandwiched maps, with brute-force oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from corrfun.errors import CapacityError, InputError

BRUTE_LIMIT = 10**7


def _check_naturals(*vals: int) -> None:
    if any(v < 0 for v in vals):
        raise InputError("sizes must be non-negative")


def surjections_formula(x: int, e: int) -> int:
    """Number of surjections from an x-set onto an e-set."""
    _check_naturals(x, e)
    return sum((-1) ** (e - i) * comb(e, i) * i**x for i in range(e + 1))


def surjections_formula_j(x: int, e: int) -> int:
    """Same count, summed over ``j = e - i``."""
    _check_naturals(x, e)
    return sum((-1) ** j * comb(e, j) * (e - j) ** x for j in range(e + 1))


def sandwich_formula(x: int, e: int, g: int) -> int:
    """Maps from an x-set into a g-set whose image contains a fixed e-subset."""
    _check_naturals(x, e, g)
    if e > g:
        raise InputError(f"need e <= g, got e={e}, g={g}")
    return sum((-1) ** i * comb(e, i) * (g - i) ** x for i in range(e + 1))


def surjections_bruteforce(x: int, e: int) -> int:
    _check_naturals(x, e)
    if e**x > BRUTE_LIMIT:
        raise CapacityError(f"{e}^{x} maps exceed the brute-force limit")
    return sum(1 for phi in itertools.product(range(e), repeat=x) if len(set(phi)) == e)


def sandwich_bruteforce(x: int, e: int, g: int) -> int:
    _check_naturals(x, e, g)
    if e > g:
        raise InputError(f"need e <= g, got e={e}, g={g}")
    if g**x > BRUTE_LIMIT:
        raise CapacityError(f"{g}^{x} maps exceed the brute-force limit")
    need = set(range(e))
    return sum(1 for phi in itertools.product(range(g), repeat=x) if need <= set(phi))


@dataclass(frozen=True)
class CountReport:
    x: int
    e: int
    g: int | None
    formula_value: int
    bruteforce_value: int | None

    @property
    def ok(self) -> bool:
        return self.bruteforce_value is None or self.formula_value == self.bruteforce_value

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "e": self.e,
            "g": self.g,
            "formula": self.formula_value,
            "bruteforce": self.bruteforce_value,
            "ok": self.ok,
        }


def count_report(x: int, e: int, g: int | None = None) -> CountReport:
    """Formula value, plus the brute-force value when it is within the limit."""
    if g is None:
        val = surjections_formula(x, e)
        brute = surjections_bruteforce(x, e) if e**x <= BRUTE_LIMIT else None
    else:
        val = sandwich_formula(x, e, g)
        brute = sandwich_bruteforce(x, e, g) if g**x <= BRUTE_LIMIT else None
    return CountReport(x, e, g, val, brute)
