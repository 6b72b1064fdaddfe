"""Evaluation of correspondence functors at finite sets.

A *module over R_E* is any object with attributes ``size`` (|E|), ``dim`` and
``field`` and a method ``matrix(q)`` returning the action of the relation with
bit pattern ``q`` as a ``dim x dim`` list of rows.  TRVModule and
InducedModule both qualify.

Evaluating L_{E,T} at X needs the quotient of ``k C(X,E) (x) T`` by the
relations ``(w s) (x) t = w (x) s t``.  Relations for products of generators
of the monoid C(E,E) follow from relations for the generators, and every
``w`` in C(X,E) is ``r p`` for ``r`` in a source strongly connected component
of the right-multiplication graph.  So the quotient is computed inside the
much smaller space ``(+)_{roots} T``.  A brute-force presentation over all of
C(X,E) x C(E,E) is kept as an independent check for small sizes.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from collections import deque
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import networkx as nx

from corrfun.errors import CapacityError, InputError, InvariantViolation
from corrfun.exactla import (
    DenseMatrix,
    Field,
    PrimeField,
    kernel_basis,
    sparse_rank,
    sparse_span,
)
from corrfun.palgebra import GroupRepresentation, TRVModule
from corrfun.posetlib import Poset, automorphism_group
from corrfun.relcore import (
    Correspondence,
    check_capacity,
    compose_bits,
    diagonal_bits,
    injection_pair,
)

PRESENTATION_LIMIT = 1 << 20
MAP_LIMIT = 10**7


# ---------------------------------------------------------------------------
# the right action of C(E,E) on C(X,E)


def _monoid_closure(gens: list[int], n: int) -> set[int]:
    start = diagonal_bits(n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose_bits(a, g, n, n, n)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


@lru_cache(maxsize=None)
def monoid_generators(n: int) -> tuple[int, ...]:
    """A small generating set of the monoid C(E,E) for |E| = n (the identity is implicit).

    Greedy: start from the two standard generators of the symmetric group, add
    missing relations by decreasing size, then drop redundant generators.
    """
    if n == 0:
        return ()
    total = 1 << (n * n)
    gens: list[int] = []
    if n >= 2:
        swap = [1, 0] + list(range(2, n))
        cycle = list(range(1, n)) + [0]
        gens = [sum(1 << (p[i] * n + i) for i in range(n)) for p in (swap, cycle)]
    closed = _monoid_closure(gens, n)
    for q in sorted(range(total), key=lambda q: (-q.bit_count(), q)):
        if q not in closed:
            gens.append(q)
            closed = _monoid_closure(gens, n)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            rest = [h for h in gens if h != g]
            if len(_monoid_closure(rest, n)) == total:
                gens = rest
                changed = True
                break
    return tuple(gens)


@dataclass(frozen=True, eq=False)
class EvalStructure:
    """Roots of C(X,E) under right multiplication and the relations among them.

    ``expr[w] = (k, p)`` means ``w = roots[k] p``.  Each entry of ``edges`` is
    a pair ``((k, p), (k', p'))`` with ``roots[k] p = roots[k'] p'`` that is
    not already implied by the spanning forest.
    """

    x: int
    e: int
    gens: tuple[int, ...]
    roots: tuple[int, ...]
    expr: dict
    edges: tuple

    @property
    def n_elements(self) -> int:
        return 1 << (self.x * self.e)


@lru_cache(maxsize=32)
def eval_structure(x: int, e: int) -> EvalStructure:
    if x < 0 or e < 0:
        raise InputError("set sizes must be non-negative")
    n = 1 << (x * e)
    gens = monoid_generators(e)
    adj = [[compose_bits(w, g, x, e, e) for g in gens] for w in range(n)]
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((w, v) for w in range(n) for v in adj[w] if v != w)
    cond = nx.condensation(graph)
    roots = sorted(min(cond.nodes[c]["members"]) for c in cond.nodes if cond.in_degree(c) == 0)
    ident = diagonal_bits(e)
    expr: dict[int, tuple[int, int]] = {}
    queue = deque()
    for k, r in enumerate(roots):
        expr[r] = (k, ident)
        queue.append(r)
    tree = set()
    while queue:
        w = queue.popleft()
        k, p = expr[w]
        for gi, v in enumerate(adj[w]):
            if v not in expr:
                expr[v] = (k, compose_bits(p, gens[gi], e, e, e))
                tree.add((w, gi))
                queue.append(v)
    if len(expr) != n:
        raise InvariantViolation("some correspondences are not reachable from the roots")
    edges = set()
    for w in range(n):
        k, p = expr[w]
        for gi, v in enumerate(adj[w]):
            if (w, gi) in tree:
                continue
            a = expr[v]
            b = (k, compose_bits(p, gens[gi], e, e, e))
            if a != b:
                edges.add((a, b) if a < b else (b, a))
    return EvalStructure(x, e, gens, tuple(roots), expr, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# cached views of module matrices


class _View:
    """Per-computation cache of a module's matrices as sparse rows and columns."""

    def __init__(self, module):
        self.module = module
        self.dim = module.dim
        self._cache: dict[int, tuple] = {}

    def get(self, q: int):
        hit = self._cache.get(q)
        if hit is None:
            m = self.module.matrix(q)
            rows = tuple({j: v for j, v in enumerate(row) if v} for row in m)
            cols = tuple({i: m[i][j] for i in range(self.dim) if m[i][j]} for j in range(self.dim))
            key = tuple(tuple(sorted(c.items())) for c in cols)
            hit = (key, rows, cols)
            self._cache[q] = hit
        return hit


def _relation_rows(view: _View, st: EvalStructure):
    """Rows spanning the relations inside the root space, deduplicated by matrix."""
    d = view.dim
    seen = set()
    for (ka, pa), (kb, pb) in st.edges:
        key_a, _, cols_a = view.get(pa)
        key_b, _, cols_b = view.get(pb)
        sig = (ka, key_a, kb, key_b)
        if sig in seen:
            continue
        seen.add(sig)
        for t in range(d):
            row: dict[int, object] = {}
            for i, v in cols_a[t].items():
                row[ka * d + i] = v
            for i, v in cols_b[t].items():
                c = kb * d + i
                row[c] = row.get(c, 0) - v
            row = {c: v for c, v in row.items() if v}
            if row:
                yield row


def _check_module_size(module, x: int, cap: int | None) -> EvalStructure:
    # the root space is never larger than |C(X,E)| * dim T, so this bounds it as well
    check_capacity((1 << (x * module.size)) * max(module.dim, 1), cap, f"|C(X,E)| * dim T for |X|={x}, |E|={module.size}")
    return eval_structure(x, module.size)


def dim_L(module, x: int, cap: int | None = None) -> int:
    """Dimension of ``L_{E,T}(X) = k C(X,E) (x)_{R_E} T`` for |X| = x."""
    if module.dim == 0:
        return 0
    st = _check_module_size(module, x, cap)
    view = _View(module)
    ncols = len(st.roots) * module.dim
    return ncols - sparse_rank(module.field, ncols, _relation_rows(view, st))


def _presentation_rows(module, x: int):
    e, d = module.size, module.dim
    n = 1 << (x * e)
    view = _View(module)
    for s in range(1 << (e * e)):
        _, _, cols = view.get(s)
        for r in range(n):
            rs = compose_bits(r, s, x, e, e)
            for t in range(d):
                row = {rs * d + t: 1}
                for i, v in cols[t].items():
                    c = r * d + i
                    row[c] = row.get(c, 0) - v
                row = {c: v for c, v in row.items() if v}
                if row:
                    yield row


def dim_L_presentation(module, x: int) -> int:
    """``dim L_{E,T}(X)`` from the full presentation over C(X,E) x C(E,E) (small sizes only)."""
    e, d = module.size, module.dim
    n = 1 << (x * e)
    if n * (1 << (e * e)) * d > PRESENTATION_LIMIT:
        raise CapacityError("full presentation is too large; use dim_L")
    if d == 0:
        return 0
    return n * d - sparse_rank(module.field, n * d, _presentation_rows(module, x))


# ---------------------------------------------------------------------------
# the map Theta into evaluations


def theta_column(module, x: int, u: int, t: list) -> list:
    """Theta-image of ``U (x) t``: coordinates of ``(psi U) t`` for every psi in C(E,X)."""
    e, f = module.size, module.field
    out = []
    for psi in range(1 << (e * x)):
        m = module.matrix(compose_bits(psi, u, e, x, e))
        out.extend(f(sum((a * b for a, b in zip(row, t) if a and b), f.zero)) for row in m)
    return out


def theta_matrix(module, x: int) -> DenseMatrix:
    """The full Theta matrix; columns ``(U, t)`` and rows ``(psi, i)`` in enumeration order."""
    e, d = module.size, module.dim
    n = 1 << (x * e)
    if (n * d) ** 2 > PRESENTATION_LIMIT:
        raise CapacityError("full Theta matrix is too large; use dim_theta")
    rows = [[module.field.zero] * (n * d) for _ in range(n * d)]
    for psi in range(n):
        for u in range(n):
            m = module.matrix(compose_bits(psi, u, e, x, e))
            for i in range(d):
                for t in range(d):
                    rows[psi * d + i][u * d + t] = m[i][t]
    return DenseMatrix.from_rows(module.field, rows, n * d)


def dim_theta(module, x: int, cap: int | None = None) -> int:
    """Rank of Theta restricted to root columns, which is ``dim S(X)``.

    Theta kills the tensor relations, so it factors through L, and L is
    spanned by the root columns.
    """
    if module.dim == 0:
        return 0
    e, d = module.size, module.dim
    st = _check_module_size(module, x, cap)
    view = _View(module)
    ncols = len(st.roots) * d

    def rows():
        seen = set()
        for psi in range(1 << (e * x)):
            blocks = [view.get(compose_bits(psi, r, e, x, e)) for r in st.roots]
            sig = tuple(b[0] for b in blocks)
            if sig in seen:
                continue
            seen.add(sig)
            for i in range(d):
                row = {}
                for k, (_, mrows, _) in enumerate(blocks):
                    for t, v in mrows[i].items():
                        row[k * d + t] = v
                if row:
                    yield row

    return sparse_rank(module.field, ncols, rows())


@dataclass(frozen=True)
class FunctorDims:
    x: int
    dimL: int
    dimJ: int
    dimS: int


def functor_dims(module, x: int, cap: int | None = None) -> FunctorDims:
    dl = dim_L(module, x, cap)
    ds = dim_theta(module, x, cap)
    if ds > dl:
        raise InvariantViolation(f"rank Theta = {ds} exceeds dim L = {dl}")
    return FunctorDims(x, dl, dl - ds, ds)


def lj_pipeline(module, x: int) -> FunctorDims:
    """L from the full presentation and J as an explicit kernel of Theta.

    Independent of the root reduction; meant for small cross-checks.
    """
    e, d = module.size, module.dim
    n = 1 << (x * e)
    if d == 0:
        return FunctorDims(x, 0, 0, 0)
    rel = sparse_span(module.field, n * d, _presentation_rows(module, x))
    theta = theta_matrix(module, x)
    for row in rel:
        vec = [row.get(c, 0) for c in range(n * d)]
        if any(theta.apply(vec)):
            raise InvariantViolation("Theta does not vanish on a tensor relation")
    kernel = kernel_basis(theta)
    dl = n * d - len(rel)
    dj = len(kernel) - len(rel)
    return FunctorDims(x, dl, dj, dl - dj)


# ---------------------------------------------------------------------------
# S_{E,R,V}


def trv_module(p: Poset, rep: GroupRepresentation) -> TRVModule:
    return _trv_cached(p, rep)


@lru_cache(maxsize=64)
def _trv_cached(p: Poset, rep: GroupRepresentation) -> TRVModule:
    return TRVModule(p, rep)


def dim_simple(p: Poset, rep: GroupRepresentation, x: int, cap: int | None = None) -> int:
    """``dim S_{E,R,V}(X)`` as the rank of Theta built from T_{R,V}."""
    return dim_theta(trv_module(p, rep), x, cap)


def dim_J(p: Poset, rep: GroupRepresentation, x: int, cap: int | None = None) -> int:
    return functor_dims(trv_module(p, rep), x, cap).dimJ


# ---------------------------------------------------------------------------
# induction


class InducedModule:
    """``T`` induced from E to F: the quotient ``k C(F,E) (x)_{R_E} T`` as an R_F-module.

    Coordinates live in the root space of C(F,E); the basis is the set of
    coordinates that are not pivots of the reduced relation span, and vectors
    are brought to normal form by reduction.
    """

    def __init__(self, base, size_f: int, cap: int | None = None):
        if size_f < 0:
            raise InputError("negative target size")
        self.base = base
        self.size = size_f
        self.field = base.field
        self.below_source = size_f < base.size
        self._st = _check_module_size(base, size_f, cap)
        self._view = _View(base)
        d = base.dim
        self._ambient = len(self._st.roots) * d
        span = sparse_span(self.field, self._ambient, _relation_rows(self._view, self._st)) if d else []
        self._reducers = [(min(row), row) for row in span]
        pivots = {c for c, _ in self._reducers}
        self.basis = tuple(c for c in range(self._ambient) if c not in pivots)
        self._coord = {c: i for i, c in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._cache: dict[int, list[list]] = {}

    def reduce(self, vec: dict) -> dict:
        """Normal form of an ambient vector (only non-pivot coordinates survive)."""
        f = self.field
        v = {c: f(a) for c, a in vec.items() if a}
        for c, row in self._reducers:
            a = v.get(c)
            if a:
                for j, b in row.items():
                    w = f(v.get(j, 0) - a * b)
                    if w:
                        v[j] = w
                    else:
                        v.pop(j, None)
        return v

    def _image(self, q: int, c: int) -> dict:
        """``q . (root (x) t)`` for the ambient coordinate ``c``, before reduction."""
        d = self.base.dim
        k, t = divmod(c, d)
        st = self._st
        w = compose_bits(q, st.roots[k], self.size, self.size, self.base.size)
        kk, p = st.expr[w]
        _, _, cols = self._view.get(p)
        return {kk * d + i: v for i, v in cols[t].items()}

    def matrix(self, q: int) -> list[list]:
        m = self._cache.get(q)
        if m is not None:
            return m
        f = self.field
        m = [[f.zero] * self.dim for _ in range(self.dim)]
        for j, c in enumerate(self.basis):
            for cc, v in self.reduce(self._image(q, c)).items():
                m[self._coord[cc]][j] = v
        self._cache[q] = m
        return m

    def action(self, q: Correspondence) -> DenseMatrix:
        if q.shape != (self.size, self.size):
            raise InputError("relation of the wrong size")
        return DenseMatrix.from_rows(self.field, self.matrix(q.bits), self.dim)

    def preserves_relations(self, q: int) -> bool:
        """``q`` maps every spanning relation into the relation span."""
        f = self.field
        for _, row in self._reducers:
            acc: dict = {}
            for c, a in row.items():
                for cc, v in self._image(q, c).items():
                    acc[cc] = f(acc.get(cc, 0) + a * v)
            if self.reduce(acc):
                return False
        return True


def induce(module, size_f: int, cap: int | None = None) -> InducedModule:
    return InducedModule(module, size_f, cap)


@dataclass(frozen=True)
class InductionCheck:
    e: int
    f: int
    x: int
    induced_dim: int
    dim_source: int
    dim_target: int

    @property
    def ok(self) -> bool:
        return self.dim_source == self.dim_target


def check_induction_iso(p: Poset, rep: GroupRepresentation, size_f: int, x: int, cap: int | None = None) -> InductionCheck:
    """Compare ``dim L_{F, T induced}(X)`` with ``dim L_{E,T}(X)``."""
    if size_f < p.size:
        raise InputError("induction target must be at least as large as E")
    t = trv_module(p, rep)
    w = induce(t, size_f, cap)
    return InductionCheck(p.size, size_f, x, w.dim, dim_L(t, x, cap), dim_L(w, x, cap))


@dataclass(frozen=True)
class VanishingCheck:
    e: int
    f: int
    induced_dim: int
    rows: tuple[FunctorDims, ...]

    @property
    def ok(self) -> bool:
        return all(r.dimJ == 0 for r in self.rows)


def check_J_vanishing(p: Poset, rep: GroupRepresentation, size_f: int, xmax: int, cap: int | None = None) -> VanishingCheck:
    if size_f < (1 << p.size):
        raise InputError(f"J-vanishing needs |F| >= 2^|E| = {1 << p.size}")
    w = induce(trv_module(p, rep), size_f, cap)
    rows = tuple(functor_dims(w, x, cap) for x in range(xmax + 1))
    return VanishingCheck(p.size, size_f, w.dim, rows)


# ---------------------------------------------------------------------------
# composition k C(X,F) (x)_{R_F} k C(F,E) -> k C(X,E)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class CompositionCheck:
    x: int
    f: int
    e: int
    tensor_dim: int
    expected_dim: int
    mu_phi_identity: bool
    phi_mu_identity: bool

    @property
    def ok(self) -> bool:
        return self.tensor_dim == self.expected_dim and self.mu_phi_identity and self.phi_mu_identity


def composition_iso_check(x: int, f: int, e: int, cap: int | None = None) -> CompositionCheck:
    """Check that composition ``beta (x) gamma -> beta gamma`` is an isomorphism.

    Relations ``beta s (x) gamma = beta (x) s gamma`` identify basis pairs, so
    the tensor product is the permutation module on the classes of pairs.
    """
    if e > f:
        raise InputError("composition isomorphism needs |E| <= |F|")
    nb, ng = 1 << (x * f), 1 << (f * e)
    check_capacity(nb * ng, cap, "pairs C(X,F) x C(F,E)")
    gens = monoid_generators(f)
    uf = _UnionFind(nb * ng)
    for g in gens:
        for beta in range(nb):
            bs = compose_bits(beta, g, x, f, f)
            for gamma in range(ng):
                uf.union(bs * ng + gamma, beta * ng + compose_bits(g, gamma, f, f, e))
    classes = {uf.find(i) for i in range(nb * ng)}
    # mu is well defined: composition is constant on each class
    mu: dict[int, int] = {}
    for i in range(nb * ng):
        beta, gamma = divmod(i, ng)
        val = compose_bits(beta, gamma, x, f, e)
        if mu.setdefault(uf.find(i), val) != val:
            raise InvariantViolation("composition is not constant on a tensor class")
    lower, upper = injection_pair(e, f, list(range(e)))
    phi = {a: (compose_bits(a, upper.bits, x, e, f), lower.bits) for a in range(1 << (x * e))}
    mu_phi = all(compose_bits(b, g, x, f, e) == a for a, (b, g) in phi.items())
    phi_mu = True
    for root in classes:
        b, g = phi[mu[root]]
        if uf.find(b * ng + g) != root:
            phi_mu = False
            break
    return CompositionCheck(x, f, e, len(classes), 1 << (x * e), mu_phi, phi_mu)


# ---------------------------------------------------------------------------
# the lower-bound construction


def _as_poset_bits(r) -> tuple[int, int]:
    if isinstance(r, Poset):
        return r.size, r.bits
    if isinstance(r, Correspondence) and r.rows == r.cols:
        return r.rows, r.bits
    raise InputError("expected a poset or a square correspondence")


def lambda_of(phi, r) -> Correspondence:
    """``{(x, e) : (phi(x), e) in R}`` in C(X,E); satisfies ``Lambda R = Lambda``."""
    n, bits = _as_poset_bits(r)
    x = len(phi)
    if any(not 0 <= v < n for v in phi):
        raise InputError("map values out of range")
    out = 0
    for i, v in enumerate(phi):
        out |= ((bits >> (v * n)) & ((1 << n) - 1)) << (i * n)
    if compose_bits(out, bits, x, n, n) != out:
        raise InvariantViolation("Lambda is not absorbed by R")
    return Correspondence(x, n, out)


def gamma_of(phi, r) -> Correspondence:
    """``{(e, x) : (e, phi(x)) in R}`` in C(E,X); satisfies ``R Gamma = Gamma``."""
    n, bits = _as_poset_bits(r)
    x = len(phi)
    if any(not 0 <= v < n for v in phi):
        raise InputError("map values out of range")
    out = 0
    for a in range(n):
        for i, v in enumerate(phi):
            if (bits >> (a * n + v)) & 1:
                out |= 1 << (a * x + i)
    if compose_bits(bits, out, n, n, x) != out:
        raise InvariantViolation("Gamma is not absorbed by R")
    return Correspondence(n, x, out)


def surjections(x: int, e: int) -> list[tuple[int, ...]]:
    if e**x > MAP_LIMIT:
        raise CapacityError(f"{e}^{x} maps exceed the enumeration limit")
    return [phi for phi in itertools.product(range(e), repeat=x) if len(set(phi)) == e]


def surjection_orbit_reps(x: int, p: Poset) -> list[tuple[int, ...]]:
    """Lexicographically least member of each Aut(E,R)-orbit on surjections X -> E."""
    aut = automorphism_group(p)
    phis = surjections(x, p.size)
    seen: set = set()
    reps = []
    for phi in phis:
        if phi in seen:
            continue
        orbit = {tuple(a(v) for v in phi) for a in aut.elements}
        if len(orbit) != len(aut):
            raise InvariantViolation(f"Aut(E,R) does not act freely on {phi}")
        seen |= orbit
        reps.append(phi)
    return reps


def independence_rank(p: Poset, rep: GroupRepresentation, x: int, v=None, cap: int | None = None) -> int:
    """Rank of the Theta-columns of ``Lambda_phi (x) f_R (x) v`` over orbit representatives."""
    t = trv_module(p, rep)
    gen = t.generator(v)
    if not any(gen):
        raise InputError("the chosen vector of V is zero")
    e = p.size
    check_capacity((1 << (e * x)) * t.dim, cap, "Theta column length")
    reps = surjection_orbit_reps(x, p)
    rows = []
    for phi in reps:
        col = theta_column(t, x, lambda_of(phi, p).bits, gen)
        rows.append({i: a for i, a in enumerate(col) if a})
    return sparse_rank(t.field, (1 << (e * x)) * t.dim, rows)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class EvaluationReport:
    E: int
    R: list
    V: str
    X: int
    dimL: int
    dimJ: int
    dimS: int
    lower: int
    upper: int
    field: str
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


CSV_FIELDS = ["E", "R", "V", "X", "dimL", "dimJ", "dimS", "lower", "upper", "field", "flags"]


def reports_to_csv(reports: list[EvaluationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        d = r.to_json()
        d["R"] = json.dumps(d["R"], separators=(",", ":"))
        d["flags"] = ";".join(d["flags"])
        w.writerow([d[k] for k in CSV_FIELDS])
    return buf.getvalue()


def describe_field(f: Field) -> str:
    return f"p:{f.p}" if isinstance(f, PrimeField) else "rational"


def bounds_report(p: Poset, rep: GroupRepresentation, x: int, cap: int | None = None) -> EvaluationReport:
    t = trv_module(p, rep)
    dims = functor_dims(t, x, cap)
    aut = automorphism_group(p)
    n_phi = len(surjections(x, p.size))
    if n_phi % len(aut):
        raise InvariantViolation("|Phi| is not divisible by |Aut(E,R)|")
    lower = n_phi // len(aut)
    flags = []
    upper = 1 << (p.size * x)
    if rep.dim != 1:
        upper *= t.dim
        flags.append("upper bound scaled by dim T")
    if rep.collapsed:
        flags.append("sign collapses to trivial in characteristic 2")
    if dims.dimS < lower:
        flags.append("lower bound violated")
    if dims.dimS > upper:
        flags.append("upper bound violated")
    return EvaluationReport(
        E=p.size,
        R=[list(q) for q in p.strict_pairs()],
        V=rep.label,
        X=x,
        dimL=dims.dimL,
        dimJ=dims.dimJ,
        dimS=dims.dimS,
        lower=lower,
        upper=upper,
        field=describe_field(t.field),
        flags=flags,
    )


def orbit_count(x: int, p: Poset) -> int:
    """``|Phi| / |Aut(E,R)|`` computed from the formula rather than enumeration."""
    from corrfun.counting import surjections_formula

    return surjections_formula(x, p.size) // len(automorphism_group(p))
