"""Finite posets: enumeration of orders, automorphism groups, cosets, orbits."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

from corrfun.errors import CapacityError, InputError
from corrfun.relcore import (
    Correspondence,
    Permutation,
    all_permutations,
    closure_bits,
    diagonal_bits,
    is_order,
    is_order_bits,
)

ORDER_GUARD = 4
ORDER_GUARD_OVERRIDE = 5


@dataclass(frozen=True)
class Poset:
    """A set ``{0..size-1}`` with an order; ``(a, b)`` in the relation means a <= b."""

    size: int
    relation: Correspondence

    def __post_init__(self):
        if self.relation.shape != (self.size, self.size):
            raise InputError("relation shape does not match poset size")
        if not is_order(self.relation):
            raise InputError("relation is not an order")

    @classmethod
    def from_pairs(cls, size: int, pairs) -> Poset:
        """Build from the strict pairs; the diagonal is added."""
        rel = Correspondence.from_pairs(size, size, list(pairs) + [(i, i) for i in range(size)])
        return cls(size, rel)

    @classmethod
    def antichain(cls, size: int) -> Poset:
        return cls(size, Correspondence(size, size, diagonal_bits(size)))

    @classmethod
    def chain(cls, size: int) -> Poset:
        """The total order 0 < 1 < ... < size-1."""
        return cls.from_pairs(size, [(a, b) for a in range(size) for b in range(a + 1, size)])

    @property
    def bits(self) -> int:
        return self.relation.bits

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.relation.pairs() if a != b]

    def to_json(self) -> dict:
        return {"size": self.size, "pairs": [list(p) for p in self.strict_pairs()]}

    @classmethod
    def from_json(cls, data) -> Poset:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            size = int(data["size"])
            pairs = [(int(a), int(b)) for a, b in data.get("pairs", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad poset JSON: {exc}") from exc
        return cls.from_pairs(size, pairs)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: tuple[Permutation, ...]

    def __post_init__(self):
        elems = frozenset(self.elements)
        object.__setattr__(self, "_members", elems)
        if len(elems) != len(self.elements):
            raise InputError("repeated group elements")
        if any(g.size != self.degree for g in self.elements):
            raise InputError("element of the wrong degree")
        if Permutation.identity(self.degree) not in elems:
            raise InputError("group lacks the identity")
        for g in self.elements:
            if g.inverse() not in elems:
                raise InputError(f"{g} has no inverse in the group")
            for h in self.elements:
                if g * h not in elems:
                    raise InputError("set is not closed under composition")
        if math.factorial(self.degree) % len(self.elements):
            raise InputError("group order does not divide degree!")

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        return cls(n, tuple(all_permutations(n)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._members

    def index(self, g: Permutation) -> int:
        return self.elements.index(g)


@dataclass(frozen=True, eq=False)
class CosetDecomposition:
    """Left cosets ``rho Aut``; ``lookup[sigma] = (rho, alpha)`` with ``rho o alpha = sigma``."""

    group: PermGroup
    reps: tuple[Permutation, ...]
    lookup: dict

    def rep_index(self, sigma: Permutation) -> int:
        return self.reps.index(self.lookup[sigma][0])


def check_order_size(n: int, override: bool = False) -> None:
    limit = ORDER_GUARD_OVERRIDE if override else ORDER_GUARD
    if n < 0:
        raise InputError("negative size")
    if n > limit:
        hint = "" if override else " (pass override to allow n = 5)"
        raise CapacityError(f"order enumeration is guarded to n <= {limit}{hint}")


@lru_cache(maxsize=None)
def _order_bits(n: int) -> tuple[int, ...]:
    diag = diagonal_bits(n)
    offdiag = [i * n + j for i in range(n) for j in range(n) if i != j]
    found = []
    for m in range(1 << len(offdiag)):
        bits = diag
        k = 0
        while m:
            if m & 1:
                bits |= 1 << offdiag[k]
            m >>= 1
            k += 1
        if is_order_bits(bits, n):
            found.append(bits)
    # the diagonal is fixed, so sorting the full pattern is the lexicographic order
    return tuple(sorted(found))


def enumerate_orders(n: int, override: bool = False) -> list[Poset]:
    """All orders on ``{0..n-1}`` sorted by bit pattern."""
    check_order_size(n, override)
    return [Poset(n, Correspondence(n, n, b)) for b in _order_bits(n)]


@lru_cache(maxsize=None)
def _preorder_bits(n: int) -> tuple[int, ...]:
    diag = diagonal_bits(n)
    offdiag = [i * n + j for i in range(n) for j in range(n) if i != j]
    found = []
    for m in range(1 << len(offdiag)):
        bits = diag | sum(1 << offdiag[k] for k in range(len(offdiag)) if (m >> k) & 1)
        if closure_bits(bits, n) == bits:
            found.append(bits)
    return tuple(sorted(found))


def enumerate_preorders(n: int, override: bool = False) -> list[Correspondence]:
    """All reflexive transitive relations on ``{0..n-1}`` sorted by bit pattern."""
    check_order_size(n, override)
    return [Correspondence(n, n, b) for b in _preorder_bits(n)]


def conjugate_bits(images, bits: int, n: int) -> int:
    out = 0
    for e in range(n):
        for f in range(n):
            if (bits >> (e * n + f)) & 1:
                out |= 1 << (images[e] * n + images[f])
    return out


def conjugate_order(sigma: Permutation, r: Correspondence) -> Correspondence:
    """``{(sigma(e), sigma(f)) : (e, f) in r}``, i.e. Delta_sigma r Delta_sigma^-1."""
    if r.shape != (sigma.size, sigma.size):
        raise InputError("degree mismatch between permutation and relation")
    return Correspondence(r.rows, r.cols, conjugate_bits(sigma.images, r.bits, r.rows))


def automorphism_group(p: Poset) -> PermGroup:
    elems = tuple(s for s in all_permutations(p.size) if conjugate_bits(s.images, p.bits, p.size) == p.bits)
    return PermGroup(p.size, elems)


def coset_decomposition(aut: PermGroup) -> CosetDecomposition:
    reps: list[Permutation] = []
    lookup: dict = {}
    for sigma in all_permutations(aut.degree):
        if sigma in lookup:
            continue
        # permutations arrive in lexicographic order, so sigma is the minimum of its coset
        reps.append(sigma)
        for alpha in aut.elements:
            lookup[sigma * alpha] = (sigma, alpha)
    return CosetDecomposition(aut, tuple(reps), lookup)


def orbit_bits(bits: int, n: int) -> set[int]:
    return {conjugate_bits(s.images, bits, n) for s in all_permutations(n)}


def isomorphism_class_reps(orders: list[Poset]) -> list[Poset]:
    """One poset per conjugacy orbit, the one with the smallest bit pattern, sorted."""
    if not orders:
        return []
    n = orders[0].size
    if any(p.size != n for p in orders):
        raise InputError("posets of different sizes")
    canon = sorted({min(orbit_bits(p.bits, n)) for p in orders})
    return [Poset(n, Correspondence(n, n, b)) for b in canon]
