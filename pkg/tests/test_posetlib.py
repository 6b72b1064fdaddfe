from __future__ import annotations

import math

import pytest

from corrfun.errors import CapacityError, InputError
from corrfun.posetlib import (
    PermGroup,
    Poset,
    automorphism_group,
    conjugate_order,
    coset_decomposition,
    enumerate_orders,
    isomorphism_class_reps,
    orbit_bits,
)
from corrfun.relcore import Correspondence, Permutation, all_correspondences, all_permutations, is_order


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)])
def test_order_counts_match_brute_force(n, count):
    orders = enumerate_orders(n)
    assert len(orders) == count
    brute = sorted(r.bits for r in all_correspondences(n, n) if is_order(r))
    assert [p.bits for p in orders] == brute


def test_guard():
    with pytest.raises(CapacityError):
        enumerate_orders(5)


def test_poset_validation_and_json():
    with pytest.raises(InputError):
        Poset(2, Correspondence.full(2, 2))
    p = Poset.from_pairs(3, [(0, 1), (0, 2)])
    assert Poset.from_json(p.to_json()) == p
    assert p.to_json() == {"size": 3, "pairs": [[0, 1], [0, 2]]}
    with pytest.raises(InputError):
        Poset.from_json({"pairs": []})


def test_conjugation_examples():
    r = Poset.chain(2).relation
    swap = Permutation((1, 0))
    assert conjugate_order(Permutation.identity(2), r) == r
    assert conjugate_order(swap, r) == Correspondence.from_pairs(2, 2, [(0, 0), (1, 1), (1, 0)])
    for p in enumerate_orders(3):
        for s in all_permutations(3):
            c = conjugate_order(s, p.relation)
            assert is_order(c)
            assert conjugate_order(s.inverse(), c) == p.relation
    with pytest.raises(InputError):
        conjugate_order(swap, Poset.chain(3).relation)


def test_automorphism_examples():
    assert len(automorphism_group(Poset.antichain(3))) == 6
    assert len(automorphism_group(Poset.chain(4))) == 1
    aut = automorphism_group(Poset.from_pairs(3, [(0, 1), (0, 2)]))
    assert set(aut.elements) == {Permutation((0, 1, 2)), Permutation((0, 2, 1))}


def test_orbit_stabilizer():
    for n in range(5):
        for p in enumerate_orders(n):
            aut = automorphism_group(p)
            assert math.factorial(n) % len(aut) == 0
            assert len(orbit_bits(p.bits, n)) * len(aut) == math.factorial(n)


def test_coset_decomposition():
    full = PermGroup.symmetric(3)
    assert coset_decomposition(full).reps == (Permutation.identity(3),)
    trivial = PermGroup(3, (Permutation.identity(3),))
    assert len(coset_decomposition(trivial).reps) == 6
    aut = automorphism_group(Poset.from_pairs(3, [(0, 1), (0, 2)]))
    cd = coset_decomposition(aut)
    assert len(cd.reps) == 3
    for s in all_permutations(3):
        rho, alpha = cd.lookup[s]
        assert rho * alpha == s and rho in cd.reps and alpha in aut
    # cosets partition the symmetric group and reps are lexicographically least
    for p in enumerate_orders(4):
        aut = automorphism_group(p)
        cd = coset_decomposition(aut)
        assert len(cd.reps) * len(aut) == 24
        for rho in cd.reps:
            assert rho == min(rho * a for a in aut.elements)


def test_permgroup_validation():
    with pytest.raises(InputError):
        PermGroup(3, (Permutation.identity(3), Permutation((1, 2, 0))))
    with pytest.raises(InputError):
        PermGroup(2, (Permutation((1, 0)),))


@pytest.mark.parametrize("n, classes", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16)])
def test_isomorphism_classes(n, classes):
    reps = isomorphism_class_reps(enumerate_orders(n))
    assert len(reps) == classes
    assert isomorphism_class_reps(reps[:1]) == reps[:1]
