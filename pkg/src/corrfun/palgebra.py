"""The algebra of permuted orders, fundamental modules and the modules T_{R,V}.

The fundamental module attached to a poset (E, R) is represented only through
its basis ``{Delta_sigma f_R : sigma in Sigma_E}`` and the explicit action of a
relation Q on it: Q sends ``Delta_sigma f_R`` to ``Delta_{tau sigma} f_R`` when
some (necessarily unique) tau satisfies ``Delta_E <= Delta_{tau^-1} Q <= sR``
(``sR`` the conjugate order), and to zero otherwise.  The idempotent f_R itself
is never materialised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from corrfun.errors import InputError, InvariantViolation
from corrfun.exactla import QQ, DenseMatrix, Field, PrimeField, det, field_from_spec
from corrfun.posetlib import (
    CosetDecomposition,
    PermGroup,
    Poset,
    automorphism_group,
    conjugate_bits,
    coset_decomposition,
)
from corrfun.relcore import (
    Correspondence,
    Permutation,
    all_permutations,
    closure_bits,
    compose_bits,
    is_order,
    is_order_bits,
    perm_bits,
    row_words,
)


def order_product(r: Correspondence, s: Correspondence) -> Correspondence | None:
    """Transitive closure of ``r | s`` when it is an order, else ``None`` (zero)."""
    if r.shape != s.shape:
        raise InputError("orders on sets of different sizes")
    if not (is_order(r) and is_order(s)):
        raise InputError("order_product needs two orders")
    n = r.rows
    t = closure_bits(r.bits | s.bits, n)
    return Correspondence(n, n, t) if is_order_bits(t, n) else None


def pe_multiply(a, b):
    """Product of basis elements ``Delta_sigma R`` and ``Delta_tau S`` of P_E.

    Uses ``Delta_sigma R Delta_tau S = Delta_{sigma tau} (tau^-1 R tau) S`` and
    the order product.  Returns ``None`` for zero.
    """
    (sigma, r), (tau, s) = a, b
    n = r.rows
    inv = tau.inverse()
    conj = Correspondence(n, n, conjugate_bits(inv.images, r.bits, n))
    prod = order_product(conj, s)
    if prod is None:
        return None
    return sigma * tau, prod


def _rows_permuted(bits: int, images, n: int) -> int:
    """Bits of ``Delta_pi q`` for ``pi`` given by ``images``: row a moves to row pi(a)."""
    out = 0
    for a, w in enumerate(row_words(bits, n, n)):
        out |= w << (images[a] * n)
    return out


class FundamentalModule:
    """Basis ``Delta_sigma f_R`` indexed by all permutations in lexicographic order."""

    def __init__(self, poset: Poset):
        self.poset = poset
        n = poset.size
        self.perms = all_permutations(n)
        self.index = {s: i for i, s in enumerate(self.perms)}
        self._conj = [conjugate_bits(s.images, poset.bits, n) for s in self.perms]
        self._delta = [perm_bits(t.images) for t in self.perms]
        self._inv_images = [t.inverse().images for t in self.perms]
        self._cache: dict[tuple[int, int], int | None] = {}

    def act_index(self, q: int, sigma_idx: int) -> int | None:
        """Index of ``tau sigma`` or ``None``; raises if tau is not unique."""
        key = (q, sigma_idx)
        if key in self._cache:
            return self._cache[key]
        n = self.poset.size
        target = self._conj[sigma_idx]
        found = []
        for t, dbits in enumerate(self._delta):
            if dbits & ~q:
                continue
            if _rows_permuted(q, self._inv_images[t], n) & ~target:
                continue
            found.append(t)
        if len(found) > 1:
            raise InvariantViolation(
                f"{len(found)} permutations qualify for Q={q:#x} on basis element {self.perms[sigma_idx]}"
            )
        res = None
        if found:
            res = self.index[self.perms[found[0]] * self.perms[sigma_idx]]
        self._cache[key] = res
        return res


@lru_cache(maxsize=64)
def fundamental_module(poset: Poset) -> FundamentalModule:
    return FundamentalModule(poset)


def fundamental_action(q: Correspondence, sigma: Permutation, poset: Poset) -> Permutation | None:
    """``Q . Delta_sigma f_R`` as the permutation ``tau sigma``, or ``None`` for zero."""
    if q.shape != (poset.size, poset.size) or sigma.size != poset.size:
        raise InputError("size mismatch in fundamental_action")
    fm = fundamental_module(poset)
    res = fm.act_index(q.bits, fm.index[sigma])
    return None if res is None else fm.perms[res]


# ---------------------------------------------------------------------------
# representations of Aut(E, R)


def _parse_scalar(field: Field, v):
    if isinstance(v, str):
        v = Fraction(v)
    return field(v)


@dataclass(frozen=True, eq=False)
class GroupRepresentation:
    """Matrices for every element of ``group``, in the order of ``group.elements``."""

    group: PermGroup
    field: Field
    dim: int
    matrices: tuple[DenseMatrix, ...]
    label: str = "custom"
    collapsed: bool = False
    _by_perm: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.matrices) != len(self.group.elements):
            raise InputError("one matrix per group element is required")
        for m in self.matrices:
            if (m.rows, m.cols) != (self.dim, self.dim) or m.field != self.field:
                raise InputError("matrix of the wrong shape or field")
        by = dict(zip(self.group.elements, self.matrices))
        object.__setattr__(self, "_by_perm", by)
        ident = Permutation.identity(self.group.degree)
        if not by[ident].is_identity():
            raise InputError("identity element is not represented by the identity matrix")
        for m in self.matrices:
            if det(m) == 0:
                raise InputError("representation matrix is singular")
        for a in self.group.elements:
            for b in self.group.elements:
                if by[a * b] != by[a] @ by[b]:
                    raise InputError(f"not a homomorphism at {a}, {b}")

    def __getitem__(self, g: Permutation) -> DenseMatrix:
        return self._by_perm[g]

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction) and v.denominator != 1:
                return str(v)
            return int(v)

        return {
            "group": [list(g.images) for g in self.group.elements],
            "dim": self.dim,
            "matrices": {str(i): [[enc(v) for v in m.row(r)] for r in range(m.rows)] for i, m in enumerate(self.matrices)},
            "field": self.field.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> GroupRepresentation:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            fld = field_from_spec(data.get("field", "rational"))
            perms = [Permutation(tuple(p)) for p in data["group"]]
            degree = perms[0].size if perms else 0
            group = PermGroup(degree, tuple(perms))
            dim = int(data["dim"])
            raw = data["matrices"]
            mats = []
            for i in range(len(perms)):
                # a list aligned with "group", or a map keyed by position
                rows = raw[i] if isinstance(raw, list) else raw[str(i)]
                mats.append(DenseMatrix.from_rows(fld, [[_parse_scalar(fld, v) for v in r] for r in rows], dim))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InputError(f"bad representation JSON: {exc}") from exc
        return cls(group, fld, dim, tuple(mats), label=data.get("label", "custom"))


def builtin_rep(kind: str, aut: PermGroup, field: Field = QQ) -> GroupRepresentation:
    """The trivial or sign representation (sign collapses to trivial in characteristic 2)."""
    if kind == "trivial":
        mats = tuple(DenseMatrix.identity(field, 1) for _ in aut.elements)
        return GroupRepresentation(aut, field, 1, mats, label="trivial")
    if kind == "sign":
        mats = tuple(DenseMatrix.from_rows(field, [[g.sign()]]) for g in aut.elements)
        collapsed = isinstance(field, PrimeField) and field.p == 2
        return GroupRepresentation(aut, field, 1, mats, label="sign", collapsed=collapsed)
    raise InputError(f"unknown builtin representation {kind!r}")


# ---------------------------------------------------------------------------
# T_{R,V}


class TRVModule:
    """``P_E f_R`` tensored over k Aut(E,R) with V.

    Basis vector ``i * dim V + j`` is ``Delta_{rho_i} f_R (x) v_j`` with
    ``rho_i`` the i-th coset representative.
    """

    def __init__(self, poset: Poset, rep: GroupRepresentation):
        aut = automorphism_group(poset)
        if set(rep.group.elements) != set(aut.elements):
            raise InputError("representation group is not Aut(E, R)")
        self.poset = poset
        self.rep = rep
        self.field = rep.field
        self.size = poset.size
        self.cosets: CosetDecomposition = coset_decomposition(aut)
        self.dim = len(self.cosets.reps) * rep.dim
        self._fm = fundamental_module(poset)
        self._rep_pos = [self._fm.index[r] for r in self.cosets.reps]
        self._landing = {}
        for sigma, (rho, alpha) in self.cosets.lookup.items():
            self._landing[self._fm.index[sigma]] = (self.cosets.reps.index(rho), rep[alpha].tolist())
        self._cache: dict[int, list[list]] = {}

    def matrix(self, q: int) -> list[list]:
        """Action matrix of the relation with bit pattern ``q`` (rows x cols = dim x dim)."""
        m = self._cache.get(q)
        if m is not None:
            return m
        d = self.rep.dim
        f = self.field
        m = [[f.zero] * self.dim for _ in range(self.dim)]
        for i, pos in enumerate(self._rep_pos):
            res = self._fm.act_index(q, pos)
            if res is None:
                continue
            k, mat = self._landing[res]
            for j in range(d):
                for a in range(d):
                    m[k * d + a][i * d + j] = mat[a][j]
        self._cache[q] = m
        return m

    def action(self, q: Correspondence) -> DenseMatrix:
        if q.shape != (self.size, self.size):
            raise InputError("relation of the wrong size")
        return DenseMatrix.from_rows(self.field, self.matrix(q.bits), self.dim)

    def generator(self, v=None) -> list:
        """Coordinates of ``f_R (x) v`` (default the first basis vector of V)."""
        f = self.field
        vec = [f.zero] * self.dim
        v = [f.one] + [f.zero] * (self.rep.dim - 1) if v is None else v
        # the identity is lexicographically first, hence the representative of its coset
        for j, a in enumerate(v):
            vec[j] = f(a)
        return vec

    def describe(self) -> str:
        return f"T(R,{self.rep.label}) dim {self.dim}"


def trv_action(q: Correspondence, module: TRVModule, v) -> list:
    """Apply the relation ``q`` to the coordinate vector ``v`` of ``module``."""
    if len(v) != module.dim:
        raise InputError("vector length does not match the module dimension")
    return module.action(q).apply(v)
