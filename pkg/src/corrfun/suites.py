"""Verification suites run by ``corrfun verify`` and the acceptance tests.

Each suite returns a SuiteResult: how many checks ran, a summary, and the
first failing instance (if any) as a JSON-ready dict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from corrfun import counting, dualsym, functev
from corrfun.errors import InputError
from corrfun.exactla import QQ, DEFAULT_PRIME, Field, PrimeField
from corrfun.palgebra import builtin_rep, fundamental_module, order_product, pe_multiply
from corrfun.posetlib import (
    Poset,
    automorphism_group,
    enumerate_orders,
    enumerate_preorders,
    isomorphism_class_reps,
)
from corrfun.relcore import (
    Correspondence,
    all_permutations,
    compose_bits,
    perm_bits,
    preorder_quotient,
)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    summary: dict = field(default_factory=dict)
    counterexample: dict | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def fail(self, **instance) -> None:
        if self.counterexample is None:
            self.counterexample = instance

    def expect(self, cond: bool, **instance) -> bool:
        self.checks += 1
        if not cond:
            self.fail(**instance)
        return cond

    def to_json(self) -> dict:
        out = {"suite": self.name, "passed": self.passed, "checks": self.checks, "summary": self.summary}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass(frozen=True)
class SuiteOptions:
    field: Field | None = None
    seed: int = 0
    cap: int | None = None


def _trivial(p: Poset, fld: Field):
    return builtin_rep("trivial", automorphism_group(p), fld)


# 1 ---------------------------------------------------------------------------
def suite_constant(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("constant")
    p = Poset.antichain(0)
    fields = [opts.field] if opts.field else [QQ, PrimeField(2)]
    for fld in fields:
        t = functev.trv_module(p, _trivial(p, fld))
        dims = [functev.dim_theta(t, x, opts.cap) for x in range(6)]
        res.summary[str(fld)] = dims
        for x, d in enumerate(dims):
            res.expect(d == 1, field=str(fld), x=x, dimS=d)
    return res


# 2 ---------------------------------------------------------------------------
def suite_example(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("example")
    p = Poset.antichain(1)
    t = functev.trv_module(p, _trivial(p, opts.field or QQ))
    rows = []
    for x in range(6):
        d = functev.functor_dims(t, x, opts.cap)
        rows.append([x, d.dimL, d.dimJ, d.dimS])
        if x >= 1:
            res.expect(d.dimS == 2**x - 1, x=x, dimS=d.dimS, expected=2**x - 1)
        res.expect(d.dimJ == 0, x=x, dimJ=d.dimJ)
    res.summary["x_dimL_dimJ_dimS"] = rows
    return res


# 3 ---------------------------------------------------------------------------
def suite_counts(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("counts")
    for x in range(7):
        for e in range(5):
            f = counting.surjections_formula(x, e)
            b = counting.surjections_bruteforce(x, e)
            res.expect(f == b == counting.surjections_formula_j(x, e), x=x, e=e, formula=f, brute=b)
            for g in range(e, 5):
                f = counting.sandwich_formula(x, e, g)
                b = counting.sandwich_bruteforce(x, e, g)
                res.expect(f == b, x=x, e=e, g=g, formula=f, brute=b)
    res.summary["grid"] = "x<=6, e<=g<=4"
    return res


# 4 ---------------------------------------------------------------------------
def suite_bounds(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("bounds")
    fld = opts.field or PrimeField(DEFAULT_PRIME)
    rows = []
    for p in isomorphism_class_reps(enumerate_orders(2)):
        rep = _trivial(p, fld)
        n_aut = len(automorphism_group(p))
        for x in range(2, 5):
            rpt = functev.bounds_report(p, rep, x, opts.cap)
            lower = counting.surjections_formula(x, 2) // n_aut
            ind = functev.independence_rank(p, rep, x, cap=opts.cap)
            n_orbits = len(functev.surjection_orbit_reps(x, p))
            rows.append({"R": rpt.R, "x": x, "lower": lower, "dimS": rpt.dimS, "upper": rpt.upper, "rank": ind})
            res.expect(lower <= rpt.dimS <= 2 ** (2 * x), R=rpt.R, x=x, lower=lower, dimS=rpt.dimS)
            res.expect(ind == n_orbits == lower == rpt.lower, R=rpt.R, x=x, rank=ind, orbits=n_orbits, lower=lower)
    res.summary["rows"] = rows
    return res


# 5 ---------------------------------------------------------------------------
def _law_holds(fm, q1: int, q2: int, s: int, n: int) -> bool:
    left = fm.act_index(compose_bits(q1, q2, n, n, n), s)
    mid = fm.act_index(q2, s)
    right = None if mid is None else fm.act_index(q1, mid)
    return left == right


def suite_fundamental(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("fundamental", seed=opts.seed)
    # exhaustive module law at |E| = 2
    for p in enumerate_orders(2):
        fm = fundamental_module(p)
        for q1, q2 in itertools.product(range(16), repeat=2):
            for s in range(2):
                res.expect(_law_holds(fm, q1, q2, s, 2), E=2, R=p.strict_pairs(), q1=q1, q2=q2, sigma=list(fm.perms[s].images))
    # seeded random triples at |E| = 3
    rng = random.Random(opts.seed)
    orders3 = enumerate_orders(3)
    for _ in range(10_000):
        p = rng.choice(orders3)
        q1, q2, s = rng.randrange(512), rng.randrange(512), rng.randrange(6)
        fm = fundamental_module(p)
        res.expect(_law_holds(fm, q1, q2, s, 3), E=3, R=p.strict_pairs(), q1=q1, q2=q2, sigma=list(fm.perms[s].images))
    # tau uniqueness over every q and basis element, |E| <= 3 (act_index raises on a violation)
    for n in range(4):
        for p in enumerate_orders(n):
            fm = fundamental_module(p)
            for q in range(1 << (n * n)):
                for s in range(len(fm.perms)):
                    fm.act_index(q, s)
            res.checks += 1
    # relations factoring through a smaller set act as zero
    for n in (2, 3):
        products = {0}
        y = n - 1
        for a in range(1 << (n * y)):
            for b in range(1 << (y * n)):
                products.add(compose_bits(a, b, n, y, n))
        for p in enumerate_orders(n):
            fm = fundamental_module(p)
            for q in sorted(products):
                for s in range(len(fm.perms)):
                    res.expect(fm.act_index(q, s) is None, E=n, R=p.strict_pairs(), q=q, sigma=list(fm.perms[s].images))
    # Aut-equivariance on the identity coset of T_{R,V}
    fld = opts.field or QQ
    for n in range(4):
        for p in enumerate_orders(n):
            aut = automorphism_group(p)
            for kind in ("trivial", "sign"):
                rep = builtin_rep(kind, aut, fld)
                t = functev.trv_module(p, rep)
                for a in aut.elements:
                    m = t.matrix(perm_bits(a.images))
                    col = [m[i][0] for i in range(t.dim)]
                    want = [rep[a][0, 0]] + [fld.zero] * (t.dim - 1)
                    res.expect(col == want, E=n, R=p.strict_pairs(), V=kind, alpha=list(a.images))
    res.summary = {"random_triples": 10_000, "E3_seed": opts.seed}
    return res


# 6 ---------------------------------------------------------------------------
def suite_associativity(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("associativity")
    triples = 0
    for n in range(4):
        orders = enumerate_orders(n)
        basis = [(s, r.relation) for s in all_permutations(n) for r in orders]
        index = {(s, r.bits): i for i, (s, r) in enumerate(basis)}
        size = len(basis)
        table = [[None] * size for _ in range(size)]
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                prod = pe_multiply(a, b)
                table[i][j] = None if prod is None else index[(prod[0], prod[1].bits)]
        for i in range(size):
            ti = table[i]
            for j in range(size):
                ij = ti[j]
                tj = table[j]
                for k in range(size):
                    jk = tj[k]
                    left = None if ij is None else table[ij][k]
                    right = None if jk is None else ti[jk]
                    if left != right:
                        res.fail(E=n, a=_basis_json(basis[i]), b=_basis_json(basis[j]), c=_basis_json(basis[k]))
            triples += size * size
        res.checks += 1
        # the order product alone, with zero absorbing
        for r, s, u in itertools.product(orders, repeat=3):
            rs = order_product(r.relation, s.relation)
            su = order_product(s.relation, u.relation)
            left = None if rs is None else order_product(rs, u.relation)
            right = None if su is None else order_product(r.relation, su)
            res.expect(left == right, E=n, r=r.strict_pairs(), s=s.strict_pairs(), u=u.strict_pairs())
    res.summary["basis_triples"] = triples
    return res


def _basis_json(b) -> dict:
    s, r = b
    return {"sigma": list(s.images), "R": [list(p) for p in r.pairs()]}


def suite_palgebra(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("palgebra", seed=opts.seed)
    for part in (suite_associativity(opts), suite_fundamental(opts)):
        res.checks += part.checks
        res.summary[part.name] = part.summary
        if part.counterexample is not None:
            res.fail(**{part.name: part.counterexample})
    return res


# 7 ---------------------------------------------------------------------------
def suite_duality(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("duality", seed=opts.seed)
    for x in range(1, 10):
        for e in range(1, 10):
            if x * e > 9:
                continue
            rpt = dualsym.verify_CA_factorization(x, e)
            res.expect(rpt.ok, factorization=rpt.__dict__)
    for e in range(4):
        ok, cex = dualsym.trace_symmetry_check(e)
        res.expect(ok, trace=cex)
        det = dualsym.gram_determinant(e)
        res.expect(det != 0, gram_e=e, det=det)
    for x, y, e in itertools.product(range(7), repeat=3):
        if x + y + e <= 6:
            ok, cex = dualsym.adjoint_identity_check(x, y, e)
            res.expect(ok, adjoint=cex)
    for x, y, e in ((3, 2, 2), (2, 2, 3), (3, 3, 1), (2, 3, 2)):
        ok, cex = dualsym.adjoint_identity_check(x, y, e, samples=2000, seed=opts.seed)
        res.expect(ok, adjoint=cex)
    for e in range(4):
        for p in enumerate_orders(e):
            for x in range(4):
                rpt = dualsym.r_perp_check(x, e, p)
                res.expect(rpt.ok, perp=rpt.__dict__)
    res.summary = {"factorization": "x*e<=9", "adjoint_exhaustive": "x+y+e<=6", "adjoint_samples": 2000}
    return res


# 8 ---------------------------------------------------------------------------
def suite_preorder(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("preorder")
    for n in range(4):
        for r in enumerate_preorders(n):
            quo = preorder_quotient(r)
            m = len(quo.classes)
            for x in range(4):
                src = {compose_bits(s, r.bits, x, n, n) for s in range(1 << (x * n))}
                dst = {compose_bits(s, quo.rbar.bits, x, m, m) for s in range(1 << (x * m))}
                image = {quo.bar(Correspondence(x, n, s)).bits for s in src}
                res.expect(len(image) == len(src) and image == dst, E=n, r=[list(p) for p in r.pairs()], x=x)
    return res


# 9 ---------------------------------------------------------------------------
def suite_induction(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("induction")
    rows = []
    for e, f in ((1, 2), (2, 3)):
        for p in enumerate_orders(e):
            rep = _trivial(p, opts.field or QQ)
            for x in range(5):
                chk = functev.check_induction_iso(p, rep, f, x, opts.cap)
                rows.append([e, f, p.strict_pairs(), x, chk.dim_source, chk.dim_target])
                res.expect(chk.ok, E=e, F=f, R=p.strict_pairs(), x=x, source=chk.dim_source, target=chk.dim_target)
    res.summary["rows"] = rows
    return res


# 10 --------------------------------------------------------------------------
def suite_jvanish(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("jvanish")
    p = Poset.antichain(1)
    chk = functev.check_J_vanishing(p, _trivial(p, opts.field or QQ), 2, 5, opts.cap)
    for row in chk.rows:
        res.expect(row.dimJ == 0, x=row.x, dimL=row.dimL, dimJ=row.dimJ)
    res.summary = {"induced_dim": chk.induced_dim, "dimJ": [r.dimJ for r in chk.rows], "dimL": [r.dimL for r in chk.rows]}
    return res


# 11 --------------------------------------------------------------------------
def suite_composition(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("composition")
    for x, f, e in ((2, 2, 1), (3, 2, 2), (2, 3, 2)):
        chk = functev.composition_iso_check(x, f, e, opts.cap)
        res.expect(chk.ok, **chk.__dict__)
        res.summary[f"{x},{f},{e}"] = chk.tensor_dim
    return res


# 12 --------------------------------------------------------------------------
def suite_minimal_set(opts: SuiteOptions) -> SuiteResult:
    res = SuiteResult("minimal-set")
    fld = opts.field or QQ
    for n in range(4):
        for p in enumerate_orders(n):
            aut = automorphism_group(p)
            for kind in ("trivial", "sign"):
                t = functev.trv_module(p, builtin_rep(kind, aut, fld))
                for x in range(n + 1):
                    ds = functev.dim_theta(t, x, opts.cap)
                    want = t.dim if x == n else 0
                    res.expect(ds == want, E=n, R=p.strict_pairs(), V=kind, x=x, dimS=ds, expected=want)
                dl = functev.dim_L(t, n, opts.cap)
                res.expect(dl == t.dim, E=n, R=p.strict_pairs(), V=kind, dimL_at_E=dl)
    return res


SUITES: dict[str, Callable[[SuiteOptions], SuiteResult]] = {
    "constant": suite_constant,
    "example": suite_example,
    "counts": suite_counts,
    "bounds": suite_bounds,
    "fundamental": suite_fundamental,
    "associativity": suite_associativity,
    "palgebra": suite_palgebra,
    "duality": suite_duality,
    "preorder": suite_preorder,
    "induction": suite_induction,
    "jvanish": suite_jvanish,
    "composition": suite_composition,
    "minimal-set": suite_minimal_set,
}


def run_suite(name: str, opts: SuiteOptions | None = None) -> SuiteResult:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](opts or SuiteOptions())
