"""The disjointness pairing on k C(X,E), the trace form on R_E, and R-restricted pairings."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from corrfun.errors import InputError
from corrfun.exactla import QQ, DenseMatrix, Field, integer_det, sparse_rank
from corrfun.posetlib import Poset
from corrfun.relcore import (
    Correspondence,
    check_capacity,
    compose_bits,
    diagonal_bits,
    transpose_bits,
)

PAIRING_GUARD = 9  # x * e


def pairing(r: Correspondence, s: Correspondence) -> int:
    """1 if ``r`` and ``s`` are disjoint, else 0."""
    if r.shape != s.shape:
        raise InputError("pairing needs correspondences of the same shape")
    return int(not r.bits & s.bits)


def popcount_order(nbits: int) -> list[int]:
    """All ``nbits``-bit patterns, by popcount and then by value."""
    return sorted(range(1 << nbits), key=lambda b: (b.bit_count(), b))


def _check_pairing_size(x: int, e: int) -> int:
    if x < 0 or e < 0:
        raise InputError("negative size")
    if x * e > PAIRING_GUARD:
        raise InputError(f"pairing matrices are guarded to x*e <= {PAIRING_GUARD}")
    return x * e


def pairing_matrix(x: int, e: int, field: Field = QQ, order: str = "natural") -> DenseMatrix:
    """Matrix of the pairing on the basis C(X,E) (``order``: natural or popcount)."""
    nb = _check_pairing_size(x, e)
    basis = popcount_order(nb) if order == "popcount" else list(range(1 << nb))
    rows = [[field.one if not (a & b) else field.zero for b in basis] for a in basis]
    return DenseMatrix.from_rows(field, rows, len(basis))


@dataclass(frozen=True)
class FactorizationReport:
    x: int
    e: int
    equals_A_C: bool
    equals_C_At: bool
    literal_C_A: bool
    a_unitriangular: bool
    det_pairing: int
    det_C: int
    det_A: int

    @property
    def ok(self) -> bool:
        return (
            self.equals_A_C
            and self.equals_C_At
            and self.a_unitriangular
            and self.det_pairing in (1, -1)
            and self.det_pairing == self.det_C * self.det_A
        )


def verify_CA_factorization(x: int, e: int) -> FactorizationReport:
    """Factor the pairing matrix through complementation and containment.

    Rows and columns use the popcount order.  With ``A[R,S] = [R <= S]`` and
    ``C`` the complementation permutation, the pairing equals ``A C`` and
    ``C A^T``; ``literal_C_A`` records whether ``C A`` also matches.
    """
    nb = _check_pairing_size(x, e)
    full = (1 << nb) - 1
    basis = popcount_order(nb)
    pos = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    P = [[int(not (a & b)) for b in basis] for a in basis]
    A = [[int(a & b == a) for b in basis] for a in basis]
    C = [[int(b == full ^ a) for b in basis] for a in basis]

    # products of 0/1 matrices where one factor is a permutation reduce to index shuffles
    comp = [pos[full ^ a] for a in basis]
    AC = [[A[i][comp[j]] for j in range(n)] for i in range(n)]
    CAt = [[A[j][comp[i]] for j in range(n)] for i in range(n)]
    CA = [[A[comp[i]][j] for j in range(n)] for i in range(n)]
    unitri = all(A[i][i] == 1 for i in range(n)) and all(A[i][j] == 0 for i in range(n) for j in range(i))
    return FactorizationReport(
        x,
        e,
        AC == P,
        CAt == P,
        CA == P,
        unitri,
        integer_det(P),
        integer_det(C),
        integer_det(A),
    )


def adjoint_identity_check(x: int, y: int, e: int, samples: int | None = None, seed: int = 0) -> tuple[bool, dict | None]:
    """Check ``<U^op R, S>_X = <R, U S>_Y`` for U in C(Y,X), R in C(Y,E), S in C(X,E).

    Exhaustive unless ``samples`` is given.  Returns ``(ok, counterexample)``.
    """
    nu, nr, ns = 1 << (y * x), 1 << (y * e), 1 << (x * e)
    if samples is None:
        check_capacity(nu * nr * ns, 1 << 24, "adjoint identity triples")
        triples = itertools.product(range(nu), range(nr), range(ns))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(nu), rng.randrange(nr), rng.randrange(ns)) for _ in range(samples))
    for u, r, s in triples:
        uop = transpose_bits(u, y, x)
        left = not (compose_bits(uop, r, x, y, e) & s)
        right = not (r & compose_bits(u, s, y, x, e))
        if left != right:
            return False, {"x": x, "y": y, "e": e, "U": u, "R": r, "S": s}
    return True, None


def trace_form(s: Correspondence) -> int:
    """1 if ``s`` misses the diagonal, else 0."""
    if s.rows != s.cols:
        raise InputError("trace form is defined on relations")
    return int(not s.bits & diagonal_bits(s.rows))


def _trace_bits(bits: int, n: int) -> int:
    return int(not bits & diagonal_bits(n))


def trace_symmetry_check(e: int) -> tuple[bool, dict | None]:
    """``t(RS) = t(SR)`` for every pair of relations on a set of size ``e``."""
    n = 1 << (e * e)
    check_capacity(n * n, 1 << 20, "relation pairs")
    for a in range(n):
        for b in range(n):
            if _trace_bits(compose_bits(a, b, e, e, e), e) != _trace_bits(compose_bits(b, a, e, e, e), e):
                return False, {"e": e, "R": a, "S": b}
    return True, None


def gram_matrix(e: int, field: Field = QQ) -> DenseMatrix:
    """``G[a][b] = t(ab)`` over all relations on a set of size ``e``."""
    n = 1 << (e * e)
    check_capacity(n, 1 << 9, "Gram matrix size")
    rows = [[field(_trace_bits(compose_bits(a, b, e, e, e), e)) for b in range(n)] for a in range(n)]
    return DenseMatrix.from_rows(field, rows, n)


def gram_determinant(e: int) -> int:
    n = 1 << (e * e)
    check_capacity(n, 1 << 9, "Gram matrix size")
    return integer_det([[_trace_bits(compose_bits(a, b, e, e, e), e) for b in range(n)] for a in range(n)])


@dataclass(frozen=True)
class PerpReport:
    x: int
    e: int
    relation: list
    span_r: int
    span_rop: int
    block_rank: int
    block_rank_transposed: int

    @property
    def ok(self) -> bool:
        return self.span_r == self.span_rop == self.block_rank == self.block_rank_transposed


def r_perp_check(x: int, e: int, r: Poset | Correspondence, field: Field = QQ) -> PerpReport:
    """Rank of the pairing between ``{U R}`` and ``{V R^op}`` against both span dimensions."""
    bits = r.bits
    if (r.size if isinstance(r, Poset) else r.rows) != e:
        raise InputError("relation size does not match e")
    check_capacity(1 << (x * e), None, "C(X,E)")
    rop = transpose_bits(bits, e, e)
    left = sorted({compose_bits(u, bits, x, e, e) for u in range(1 << (x * e))})
    right = sorted({compose_bits(v, rop, x, e, e) for v in range(1 << (x * e))})
    block = [{j: 1 for j, b in enumerate(right) if not a & b} for a in left]
    block_t = [{i: 1 for i, a in enumerate(left) if not a & b} for b in right]
    pairs = [[a, b] for a in range(e) for b in range(e) if a != b and (bits >> (a * e + b)) & 1]
    return PerpReport(
        x,
        e,
        pairs,
        len(left),
        len(right),
        sparse_rank(field, len(right), block),
        sparse_rank(field, len(left), block_t),
    )
