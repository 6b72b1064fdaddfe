from __future__ import annotations

import itertools
import random

import pytest

from corrfun import functev
from corrfun.counting import surjections_formula
from corrfun.errors import CapacityError, InputError
from corrfun.exactla import QQ, PrimeField
from corrfun.functev import (
    check_induction_iso,
    check_J_vanishing,
    composition_iso_check,
    dim_L,
    dim_L_presentation,
    dim_simple,
    dim_theta,
    functor_dims,
    gamma_of,
    independence_rank,
    induce,
    lambda_of,
    lj_pipeline,
    monoid_generators,
    surjection_orbit_reps,
    surjections,
    trv_module,
)
from corrfun.palgebra import builtin_rep
from corrfun.posetlib import Poset, automorphism_group, enumerate_orders
from corrfun.relcore import Correspondence, all_correspondences, compose_bits


def trivial(p: Poset, fld=QQ):
    return builtin_rep("trivial", automorphism_group(p), fld)


def monoid_closure_naive(gens, n):
    full = (1 << (n * n)) - 1
    seen = {sum(1 << (i * n + i) for i in range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose_bits(a, g, n, n, n)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen, full


@pytest.mark.parametrize("n", [0, 1, 2])
def test_monoid_generators_generate(n):
    seen, full = monoid_closure_naive(monoid_generators(n), n)
    assert seen == set(range(full + 1))


def test_dim_L_matches_presentation():
    for n in range(3):
        for p in enumerate_orders(n):
            for kind in ("trivial", "sign"):
                t = trv_module(p, builtin_rep(kind, automorphism_group(p)))
                for x in range(4 if n < 2 else 3):
                    assert dim_L(t, x) == dim_L_presentation(t, x)


def test_pipeline_matches_fast_route():
    for n in range(3):
        for p in enumerate_orders(n):
            t = trv_module(p, trivial(p))
            for x in range(3):
                assert lj_pipeline(t, x) == functor_dims(t, x)


def test_chain_and_antichain_values():
    chain, anti = Poset.chain(2), Poset.antichain(2)
    assert [dim_simple(chain, trivial(chain), x) for x in (2, 3)] == [2, 12]
    assert [dim_simple(anti, trivial(anti), x) for x in (2, 3)] == [1, 9]


def test_singleton_exact_sequence_splits():
    p = Poset.antichain(1)
    t = trv_module(p, trivial(p))
    for x in range(5):
        d = functor_dims(t, x)
        assert d.dimJ == 0
        assert d.dimL == d.dimS == max(2**x - 1, 0)


def test_minimal_set_law_small():
    for n in range(3):
        for p in enumerate_orders(n):
            t = trv_module(p, trivial(p))
            for x in range(n):
                assert dim_theta(t, x) == 0
            assert dim_theta(t, n) == t.dim


def test_field_choice_matters_only_for_sign():
    p = Poset.antichain(2)
    aut = automorphism_group(p)
    f2 = PrimeField(2)
    for x in range(4):
        a = dim_simple(p, builtin_rep("sign", aut, f2), x)
        b = dim_simple(p, builtin_rep("trivial", aut, f2), x)
        assert a == b


def test_capacity_guard():
    p = Poset.antichain(1)
    t = trv_module(p, trivial(p))
    with pytest.raises(CapacityError):
        dim_L(t, 6, cap=16)


def test_induced_module_examples():
    p = Poset.antichain(1)
    t = trv_module(p, trivial(p))
    w = induce(t, 2)
    assert w.dim == 3
    same = induce(t, 1)
    assert same.dim == t.dim


def test_induced_module_is_a_module():
    for p in enumerate_orders(2):
        w = induce(trv_module(p, trivial(p)), 2)
        assert w.dim == trv_module(p, trivial(p)).dim
    p = Poset.antichain(1)
    w = induce(trv_module(p, trivial(p)), 2)
    n = 2
    for q1, q2 in itertools.product(range(16), repeat=2):
        c1, c2 = Correspondence(n, n, q1), Correspondence(n, n, q2)
        assert w.action(c1 @ c2) == w.action(c1) @ w.action(c2)
    for q in range(16):
        assert w.preserves_relations(q)


def test_induced_module_law_sampled_e2_f3():
    rng = random.Random(3)
    for p in enumerate_orders(2):
        w = induce(trv_module(p, trivial(p)), 3)
        for _ in range(30):
            c1 = Correspondence(3, 3, rng.randrange(512))
            c2 = Correspondence(3, 3, rng.randrange(512))
            assert w.action(c1 @ c2) == w.action(c1) @ w.action(c2)


def test_induction_iso_small():
    for p in enumerate_orders(1):
        for x in range(4):
            assert check_induction_iso(p, trivial(p), 2, x).ok
    with pytest.raises(InputError):
        check_induction_iso(Poset.antichain(2), trivial(Poset.antichain(2)), 1, 2)


def test_induction_to_same_size_is_identity():
    for p in enumerate_orders(2):
        for x in range(3):
            chk = check_induction_iso(p, trivial(p), 2, x)
            assert chk.ok and chk.induced_dim == trv_module(p, trivial(p)).dim


def test_j_vanishing_small():
    p = Poset.antichain(1)
    chk = check_J_vanishing(p, trivial(p), 2, 3)
    assert chk.ok and len(chk.rows) == 4
    with pytest.raises(InputError):
        check_J_vanishing(Poset.antichain(2), trivial(Poset.antichain(2)), 3, 2)


@pytest.mark.parametrize("x, f, e", [(1, 1, 1), (2, 2, 1), (1, 2, 2), (2, 1, 0), (0, 2, 1)])
def test_composition_iso_small(x, f, e):
    chk = composition_iso_check(x, f, e)
    assert chk.ok and chk.tensor_dim == 1 << (x * e)


def test_composition_iso_rejects_e_above_f():
    with pytest.raises(InputError):
        composition_iso_check(1, 1, 2)


def test_lambda_gamma_absorption_exhaustive():
    for e in range(1, 4):
        for p in enumerate_orders(e):
            r = p.relation
            for x in range(e, 5):
                for phi in itertools.product(range(e), repeat=x):
                    lam = lambda_of(phi, p)
                    gam = gamma_of(phi, p)
                    assert lam @ r == lam
                    assert r @ gam == gam
                    want = {(i, a) for i, v in enumerate(phi) for a in range(e) if (v, a) in set(r.pairs())}
                    assert set(lam.pairs()) == want


def test_surjections_match_count():
    for x in range(6):
        for e in range(4):
            assert len(surjections(x, e)) == surjections_formula(x, e)


def test_surjection_orbit_reps():
    anti = Poset.antichain(2)
    assert surjection_orbit_reps(2, anti) == [(0, 1)]
    assert len(surjection_orbit_reps(3, anti)) == 3
    chain = Poset.chain(2)
    assert len(surjection_orbit_reps(3, chain)) == 6


def test_independence_rank_examples():
    chain, anti = Poset.chain(2), Poset.antichain(2)
    assert independence_rank(chain, trivial(chain), 3) == 6
    assert independence_rank(anti, trivial(anti), 3) == 3
    assert independence_rank(chain, trivial(chain), 1) == 0


def test_bounds_report_and_csv():
    p = Poset.chain(2)
    rpt = functev.bounds_report(p, trivial(p), 3)
    assert rpt.lower == 6 and rpt.upper == 64 and rpt.lower <= rpt.dimS <= rpt.upper
    assert rpt.flags == []
    text = functev.reports_to_csv([rpt])
    assert text.splitlines()[0] == ",".join(functev.CSV_FIELDS)
    collapsed = functev.bounds_report(Poset.antichain(2), builtin_rep("sign", automorphism_group(Poset.antichain(2)), PrimeField(2)), 2)
    assert any("characteristic 2" in f for f in collapsed.flags)


def test_orbit_count():
    for n in range(4):
        for p in enumerate_orders(n):
            for x in range(5):
                assert functev.orbit_count(x, p) == len(surjection_orbit_reps(x, p))


def test_theta_kills_inessential_products():
    # a product through a smaller set has zero Theta column
    p = Poset.chain(2)
    t = trv_module(p, trivial(p))
    gen = t.generator()
    for a in all_correspondences(2, 1):
        for b in all_correspondences(1, 2):
            col = functev.theta_column(t, 2, (a @ b).bits, gen)
            assert not any(col)


def test_dim_L_matches_presentation_e3():
    for p in (Poset.antichain(3), Poset.from_pairs(3, [(0, 1), (0, 2)])):
        t = trv_module(p, builtin_rep("sign", automorphism_group(p)))
        for x in range(3):
            assert dim_L(t, x) == dim_L_presentation(t, x)
