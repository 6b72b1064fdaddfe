"""Correspondences between finite sets, stored as packed bit-matrices.

A correspondence from X to Y is a subset of Y x X.  Sets are always
``{0, ..., n-1}``; the pair ``(y, x)`` lives at bit ``y * cols + x`` of an
integer, so row ``y`` is the ``cols``-bit word of sources related to ``y``.
Composition is the Boolean matrix product, computed a row-word at a time.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from corrfun.errors import CapacityError, InputError

DEFAULT_CAP = 1 << 16


def default_cap() -> int:
    """Enumeration cap, overridable through the CORRFUN_CAP environment variable."""
    raw = os.environ.get("CORRFUN_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"CORRFUN_CAP={raw!r} is not an integer") from exc
    if cap <= 0:
        raise InputError("CORRFUN_CAP must be positive")
    return cap


def check_capacity(count: int, cap: int | None, what: str) -> None:
    cap = default_cap() if cap is None else cap
    if count > cap:
        raise CapacityError(f"{what}: {count} exceeds the cap of {cap}")


# ---------------------------------------------------------------------------
# raw bit-level kernels (hot paths work on ints directly)


def row_words(bits: int, rows: int, cols: int) -> list[int]:
    mask = (1 << cols) - 1
    return [(bits >> (i * cols)) & mask for i in range(rows)]


def union_table(bits: int, rows: int, cols: int) -> list[int]:
    """``table[m]`` = union of the rows of ``bits`` selected by the mask ``m``."""
    table = [0] * (1 << rows)
    words = row_words(bits, rows, cols)
    for m in range(1, 1 << rows):
        low = m & -m
        table[m] = table[m ^ low] | words[low.bit_length() - 1]
    return table


def compose_bits(a: int, b: int, z: int, y: int, x: int) -> int:
    """Bits of ``a b`` for ``a`` in Z x Y and ``b`` in Y x X."""
    ymask = (1 << y) - 1
    brows = row_words(b, y, x)
    out = 0
    for i in range(z):
        row = (a >> (i * y)) & ymask
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= brows[j]
            row >>= 1
            j += 1
        out |= acc << (i * x)
    return out


def right_multiplier(b: int, y: int, x: int, z: int) -> Callable[[int], int]:
    """Return ``a -> a b`` for a fixed right factor, via a precomputed union table."""
    table = union_table(b, y, x)
    ymask = (1 << y) - 1

    def mul(a: int) -> int:
        out = 0
        for i in range(z):
            out |= table[(a >> (i * y)) & ymask] << (i * x)
        return out

    return mul


def transpose_bits(bits: int, rows: int, cols: int) -> int:
    out = 0
    for y in range(rows):
        for x in range(cols):
            if (bits >> (y * cols + x)) & 1:
                out |= 1 << (x * rows + y)
    return out


def diagonal_bits(n: int) -> int:
    return sum(1 << (i * n + i) for i in range(n))


def perm_bits(images: Sequence[int]) -> int:
    n = len(images)
    return sum(1 << (images[i] * n + i) for i in range(n))


def closure_bits(bits: int, n: int) -> int:
    """Warshall sweep on row words: (i,k),(k,j) -> (i,j)."""
    rows = row_words(bits, n, n)
    for k in range(n):
        rk = rows[k]
        kbit = 1 << k
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= rk
    return sum(r << (i * n) for i, r in enumerate(rows))


def is_order_bits(bits: int, n: int) -> bool:
    diag = diagonal_bits(n)
    if bits & diag != diag:
        return False
    t = transpose_bits(bits, n, n)
    if bits & t != diag:
        return False
    return closure_bits(bits, n) == bits


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class Correspondence:
    """A subset of Y x X, i.e. a morphism X -> Y, with ``rows = |Y|`` and ``cols = |X|``."""

    rows: int
    cols: int
    bits: int = 0

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("negative set size")
        if self.bits < 0 or self.bits >> (self.rows * self.cols):
            raise InputError("bits outside the rows x cols grid")

    @classmethod
    def from_pairs(cls, rows: int, cols: int, pairs: Iterable[Sequence[int]]) -> Correspondence:
        bits = 0
        for y, x in pairs:
            if not (0 <= y < rows and 0 <= x < cols):
                raise InputError(f"pair {(y, x)} outside {rows}x{cols}")
            bits |= 1 << (y * cols + x)
        return cls(rows, cols, bits)

    @classmethod
    def full(cls, rows: int, cols: int) -> Correspondence:
        return cls(rows, cols, (1 << (rows * cols)) - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __contains__(self, pair) -> bool:
        y, x = pair
        return bool((self.bits >> (y * self.cols + x)) & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(y, x) for y in range(self.rows) for x in range(self.cols) if (y, x) in self]

    def row(self, y: int) -> int:
        return (self.bits >> (y * self.cols)) & ((1 << self.cols) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def _same_shape(self, other: Correspondence) -> None:
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __and__(self, other: Correspondence) -> Correspondence:
        self._same_shape(other)
        return Correspondence(self.rows, self.cols, self.bits & other.bits)

    def __or__(self, other: Correspondence) -> Correspondence:
        self._same_shape(other)
        return Correspondence(self.rows, self.cols, self.bits | other.bits)

    def __le__(self, other: Correspondence) -> bool:
        self._same_shape(other)
        return self.bits & ~other.bits == 0

    def complement(self) -> Correspondence:
        return Correspondence(self.rows, self.cols, ((1 << (self.rows * self.cols)) - 1) ^ self.bits)

    def __matmul__(self, other: Correspondence) -> Correspondence:
        return compose(self, other)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "pairs": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json(cls, data: dict) -> Correspondence:
        try:
            return cls.from_pairs(int(data["rows"]), int(data["cols"]), data["pairs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad correspondence JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"Correspondence({self.rows}x{self.cols}, {self.pairs()})"


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., size-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]
    _inverse: tuple[int, ...] = field(default=(), repr=False, compare=False, hash=False)

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"{images} is not a permutation")
        inv = [0] * len(images)
        for i, v in enumerate(images):
            inv[v] = i
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_inverse", tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition ``self o other`` (apply ``other`` first)."""
        if self.size != other.size:
            raise InputError("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        return Permutation(self._inverse)

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.size))

    def sign(self) -> int:
        seen = [False] * self.size
        s = 1
        for i in range(self.size):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = self.images[j]
                    length += 1
                if length % 2 == 0:
                    s = -s
        return s

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def all_permutations(n: int) -> list[Permutation]:
    """Every permutation of ``{0..n-1}``, lexicographic in the image tuple."""
    return [Permutation(p) for p in itertools.permutations(range(n))]


def all_correspondences(rows: int, cols: int, cap: int | None = None) -> Iterator[Correspondence]:
    """C(cols -> rows) in the order 0 .. 2^(rows*cols)-1 of bit patterns."""
    count = 1 << (rows * cols)
    check_capacity(count, cap, f"enumerating C({cols},{rows})")
    for bits in range(count):
        yield Correspondence(rows, cols, bits)


# ---------------------------------------------------------------------------
# operations


def compose(r: Correspondence, s: Correspondence) -> Correspondence:
    """``r s``: (z, x) is related iff (z, y) in r and (y, x) in s for some y."""
    if r.cols != s.rows:
        raise InputError(f"cannot compose {r.rows}x{r.cols} with {s.rows}x{s.cols}")
    return Correspondence(r.rows, s.cols, compose_bits(r.bits, s.bits, r.rows, r.cols, s.cols))


def opposite(r: Correspondence) -> Correspondence:
    return Correspondence(r.cols, r.rows, transpose_bits(r.bits, r.rows, r.cols))


def diagonal(n: int) -> Correspondence:
    return Correspondence(n, n, diagonal_bits(n))


def delta_of(sigma: Permutation) -> Correspondence:
    """The graph {(sigma(x), x)}."""
    return Correspondence(sigma.size, sigma.size, perm_bits(sigma.images))


def _square(q: Correspondence) -> int:
    if q.rows != q.cols:
        raise InputError(f"relation must be square, got {q.rows}x{q.cols}")
    return q.rows


def is_reflexive(q: Correspondence) -> bool:
    d = diagonal_bits(_square(q))
    return q.bits & d == d


def is_transitive(q: Correspondence) -> bool:
    n = _square(q)
    return compose_bits(q.bits, q.bits, n, n, n) & ~q.bits == 0


def is_antisymmetric(q: Correspondence) -> bool:
    n = _square(q)
    return q.bits & transpose_bits(q.bits, n, n) & ~diagonal_bits(n) == 0


def is_preorder(q: Correspondence) -> bool:
    return is_reflexive(q) and is_transitive(q)


def is_order(q: Correspondence) -> bool:
    return is_preorder(q) and is_antisymmetric(q)


def transitive_closure(q: Correspondence) -> Correspondence:
    n = _square(q)
    return Correspondence(n, n, closure_bits(q.bits, n))


def injection_pair(size_e: int, size_f: int, i: Sequence[int]) -> tuple[Correspondence, Correspondence]:
    """``(i_*, i^*)`` for an injective map ``i: E -> F``; ``i^* i_* = Delta_E``."""
    i = list(i)
    if len(i) != size_e:
        raise InputError(f"map has {len(i)} values, expected {size_e}")
    if len(set(i)) != size_e or any(not 0 <= v < size_f for v in i):
        raise InputError(f"{i} is not an injection into a set of size {size_f}")
    lower = Correspondence.from_pairs(size_f, size_e, [(i[e], e) for e in range(size_e)])
    upper = Correspondence.from_pairs(size_e, size_f, [(e, i[e]) for e in range(size_e)])
    return lower, upper


@dataclass(frozen=True)
class PreorderQuotient:
    """Classes of a preorder, the induced order on them, and the collapsing map."""

    classes: tuple[tuple[int, ...], ...]
    rbar: Correspondence
    class_of: tuple[int, ...]

    def bar(self, s: Correspondence) -> Correspondence:
        """Collapse ``s`` in C(X, E) to C(X, E/~); ``s`` must be constant on classes."""
        n = len(self.class_of)
        if s.cols != n:
            raise InputError(f"expected a correspondence into a set of size {n}")
        m = len(self.classes)
        out = 0
        for x in range(s.rows):
            row = s.row(x)
            for c, members in enumerate(self.classes):
                hits = [(row >> e) & 1 for e in members]
                if any(hits) and not all(hits):
                    raise InputError("correspondence is not constant on preorder classes")
                if hits[0]:
                    out |= 1 << (x * m + c)
        return Correspondence(s.rows, m, out)


def preorder_quotient(r: Correspondence) -> PreorderQuotient:
    if not is_preorder(r):
        raise InputError("relation is not a preorder")
    n = r.rows
    class_of = [-1] * n
    classes: list[tuple[int, ...]] = []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        members = tuple(b for b in range(n) if (a, b) in r and (b, a) in r)
        for b in members:
            class_of[b] = len(classes)
        classes.append(members)
    m = len(classes)
    rbar = Correspondence.from_pairs(
        m, m, [(ca, cb) for ca in range(m) for cb in range(m) if (classes[ca][0], classes[cb][0]) in r]
    )
    return PreorderQuotient(tuple(classes), rbar, tuple(class_of))


def inessential_span_dimension(size_e: int, field=None) -> int:
    """Dimension of the span of relations on E factoring through a set of size |E|-1."""
    from corrfun.exactla import QQ, SpanAccumulator

    if size_e > 3:
        raise CapacityError(f"inessential span is guarded to |E| <= 3, got {size_e}")
    if size_e == 0:
        return 0
    field = QQ if field is None else field
    y = size_e - 1
    dim = 1 << (size_e * size_e)
    acc = SpanAccumulator(field, dim)
    seen = set()
    for a in range(1 << (size_e * y)):
        for b in range(1 << (y * size_e)):
            q = compose_bits(a, b, size_e, y, size_e)
            if q in seen:
                continue
            seen.add(q)
            v = [0] * dim
            v[q] = 1
            acc.insert(v)
    return acc.dimension()
