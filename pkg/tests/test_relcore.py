from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrfun.errors import CapacityError, InputError
from corrfun.exactla import QQ
from corrfun.relcore import (
    Correspondence,
    Permutation,
    all_correspondences,
    all_permutations,
    compose,
    delta_of,
    diagonal,
    inessential_span_dimension,
    injection_pair,
    is_antisymmetric,
    is_order,
    is_preorder,
    is_reflexive,
    is_transitive,
    opposite,
    preorder_quotient,
    transitive_closure,
)


def naive_compose(r: Correspondence, s: Correspondence) -> Correspondence:
    pairs = {(z, x) for z, y in r.pairs() for y2, x in s.pairs() if y == y2}
    return Correspondence.from_pairs(r.rows, s.cols, pairs)


@st.composite
def corr(draw, rows=None, cols=None, max_size=4):
    rows = draw(st.integers(0, max_size)) if rows is None else rows
    cols = draw(st.integers(0, max_size)) if cols is None else cols
    bits = draw(st.integers(0, (1 << (rows * cols)) - 1))
    return Correspondence(rows, cols, bits)


def test_bits_out_of_range_rejected():
    with pytest.raises(InputError):
        Correspondence(2, 2, 1 << 4)


def test_compose_examples():
    s = Correspondence.from_pairs(3, 2, [(0, 1), (2, 0)])
    assert compose(diagonal(3), s) == s
    assert compose(Correspondence(3, 3, 0), s) == Correspondence(3, 2, 0)
    r = Correspondence.from_pairs(2, 1, [(0, 0), (1, 0)])
    one = Correspondence.from_pairs(1, 1, [(0, 0)])
    assert compose(r, one) == r
    with pytest.raises(InputError):
        compose(r, s)


def test_compose_matches_naive_exhaustively_small():
    for z, y, x in [(1, 2, 2), (2, 2, 1), (2, 1, 2)]:
        for a in all_correspondences(z, y):
            for b in all_correspondences(y, x):
                assert compose(a, b) == naive_compose(a, b)


def test_associativity_exhaustive_sizes_up_to_3():
    # all triples through sets of sizes (2, 2, 2, 2) plus mixed shapes
    shapes = [(2, 2, 2, 2), (1, 2, 3, 2), (3, 1, 2, 1)]
    for w, z, y, x in shapes:
        As = list(all_correspondences(w, z))
        Bs = list(all_correspondences(z, y))
        Cs = list(all_correspondences(y, x))
        for a in As:
            for b in Bs:
                ab = a @ b
                for c in Cs:
                    assert ab @ c == a @ (b @ c)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_associativity_random(data):
    w, z, y, x = (data.draw(st.integers(0, 5)) for _ in range(4))
    a = data.draw(corr(w, z))
    b = data.draw(corr(z, y))
    c = data.draw(corr(y, x))
    assert (a @ b) @ c == a @ (b @ c)


def test_opposite_involution_and_antihomomorphism():
    assert opposite(diagonal(3)) == diagonal(3)
    for s in all_correspondences(2, 2):
        assert opposite(opposite(s)) == s
        for r in all_correspondences(2, 2):
            assert opposite(compose(s, r)) == compose(opposite(r), opposite(s))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_opposite_antihomomorphism_random(data):
    z, y, x = (data.draw(st.integers(0, 5)) for _ in range(3))
    s = data.draw(corr(z, y))
    r = data.draw(corr(y, x))
    assert opposite(s @ r) == opposite(r) @ opposite(s)


def test_delta_examples():
    assert delta_of(Permutation.identity(3)) == diagonal(3)
    assert delta_of(Permutation((1, 0))) == Correspondence.from_pairs(2, 2, [(1, 0), (0, 1)])
    for s in all_permutations(3):
        for t in all_permutations(3):
            assert delta_of(s) @ delta_of(t) == delta_of(s * t)


def test_permutation_validation_and_sign():
    with pytest.raises(InputError):
        Permutation((0, 0))
    assert Permutation((1, 0)).sign() == -1
    assert Permutation((1, 2, 0)).sign() == 1
    for s in all_permutations(4):
        assert s * s.inverse() == Permutation.identity(4)


def test_predicates():
    d = diagonal(3)
    assert all(f(d) for f in (is_reflexive, is_transitive, is_antisymmetric, is_order, is_preorder))
    full = Correspondence.full(2, 2)
    assert is_preorder(full) and not is_order(full)
    assert is_order(Correspondence.from_pairs(2, 2, [(0, 0), (1, 1), (0, 1)]))
    with pytest.raises(InputError):
        is_order(Correspondence(2, 3, 0))


def test_transitive_closure_examples():
    q = Correspondence.from_pairs(3, 3, [(0, 1), (1, 2)])
    assert transitive_closure(q) == Correspondence.from_pairs(3, 3, [(0, 1), (1, 2), (0, 2)])
    assert transitive_closure(diagonal(3)) == diagonal(3)


def test_transitive_closure_is_minimal_brute_force():
    for n in range(4):
        transitive = [t.bits for t in all_correspondences(n, n) if is_transitive(t)]
        for q in all_correspondences(n, n):
            smallest = (1 << (n * n)) - 1
            for t in transitive:
                if q.bits & ~t == 0:
                    smallest &= t
            tc = transitive_closure(q)
            assert tc.bits == smallest
            assert transitive_closure(tc) == tc


def test_injection_pair():
    lo, up = injection_pair(1, 2, [1])
    assert lo == Correspondence.from_pairs(2, 1, [(1, 0)])
    assert up == Correspondence.from_pairs(1, 2, [(0, 1)])
    assert up @ lo == diagonal(1)
    assert injection_pair(3, 3, [0, 1, 2]) == (diagonal(3), diagonal(3))
    with pytest.raises(InputError):
        injection_pair(2, 3, [1, 1])


def test_injection_pairs_up_to_4():
    for f in range(5):
        for e in range(f + 1):
            for image in itertools.permutations(range(f), e):
                lo, up = injection_pair(e, f, image)
                assert up @ lo == diagonal(e)
                idem = lo @ up
                assert idem @ idem == idem


def test_preorder_quotient_examples():
    q = preorder_quotient(Correspondence.full(2, 2))
    assert q.classes == ((0, 1),) and q.rbar == diagonal(1)
    chain = Correspondence.from_pairs(2, 2, [(0, 0), (1, 1), (0, 1)])
    q = preorder_quotient(chain)
    assert q.classes == ((0,), (1,)) and q.rbar == chain
    with pytest.raises(InputError):
        preorder_quotient(Correspondence.from_pairs(2, 2, [(0, 1)]))


def test_bar_rejects_non_constant():
    q = preorder_quotient(Correspondence.full(2, 2))
    with pytest.raises(InputError):
        q.bar(Correspondence.from_pairs(1, 2, [(0, 0)]))


def test_inessential_span_values():
    assert inessential_span_dimension(0) == 0
    assert inessential_span_dimension(1) == 1
    # relations are basis vectors, so the span dimension is the number of distinct products
    for e in (2, 3):
        products = {
            (a @ b).bits
            for a in all_correspondences(e, e - 1)
            for b in all_correspondences(e - 1, e)
        }
        assert inessential_span_dimension(e, QQ) == len(products)
    with pytest.raises(CapacityError):
        inessential_span_dimension(4)


def test_smaller_factorizations_stay_in_span():
    for e in (2, 3):
        via_e1 = {(a @ b).bits for a in all_correspondences(e, e - 1) for b in all_correspondences(e - 1, e)}
        for y in range(e - 1):
            for a in all_correspondences(e, y):
                for b in all_correspondences(y, e):
                    assert (a @ b).bits in via_e1


def test_json_roundtrip():
    r = Correspondence.from_pairs(2, 3, [(0, 2), (1, 0)])
    assert Correspondence.from_json(r.to_json()) == r


def test_capacity_guard_on_enumeration():
    with pytest.raises(CapacityError):
        list(all_correspondences(5, 5, cap=1 << 16))
