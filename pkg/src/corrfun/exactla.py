"""Exact linear algebra over the rationals and prime fields.

Two interchangeable backends are provided: a small pure-Python Gauss-Jordan
elimination (deterministic pivoting, used for echelon forms, kernels and as a
reference) and FLINT through ``python-flint`` for large rank and determinant
computations.  Both are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from corrfun.errors import InputError

DEFAULT_PRIME = 1_000_003
RATIONAL_BASIS_LIMIT = 4096


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10**24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Rationals:
    characteristic: int = 0

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def to_json(self):
        return "rational"

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and 2 <= self.p < 2**31 and is_prime(self.p)):
            raise InputError(f"{self.p!r} is not a prime below 2^31")

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_json(self):
        return {"prime": self.p}

    def __str__(self) -> str:
        return f"F_{self.p}"


QQ = Rationals()
Field = Rationals | PrimeField


def field_from_spec(spec) -> Field:
    """Parse ``"rational"``, ``"p:<prime>"``, ``{"prime": p}`` or a field instance."""
    if isinstance(spec, (Rationals, PrimeField)):
        return spec
    if isinstance(spec, dict) and "prime" in spec:
        return PrimeField(int(spec["prime"]))
    if isinstance(spec, int):
        return PrimeField(spec)
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("rational", "q", "qq", "rationals"):
            return QQ
        if s.startswith("p:"):
            try:
                return PrimeField(int(s[2:]))
            except ValueError as exc:
                raise InputError(f"bad prime in field spec {spec!r}") from exc
    raise InputError(f"unrecognised field spec {spec!r}")


def choose_field(n_basis: int, requested="auto") -> Field:
    """Rationals up to RATIONAL_BASIS_LIMIT basis vectors, a prime field above."""
    if requested is None or requested == "auto":
        return QQ if n_basis <= RATIONAL_BASIS_LIMIT else PrimeField(DEFAULT_PRIME)
    return field_from_spec(requested)


# ---------------------------------------------------------------------------
# pure-Python elimination


def _rref_rows(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Gauss-Jordan on a copy of ``rows``; first nonzero entry in scan order pivots."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    if isinstance(field, PrimeField):
        p = field.p
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if rows[i][c] % p), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [v * inv % p for v in rows[r]]
            pr = rows[r]
            for i in range(nrows):
                f = rows[i][c] % p
                if i != r and f:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    else:
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / Fraction(rows[r][c])
            rows[r] = [v * inv for v in rows[r]]
            pr = rows[r]
            for i in range(nrows):
                f = rows[i][c]
                if i != r and f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    return rows[:r], pivots


# ---------------------------------------------------------------------------
# FLINT bridge


def flint_matrix(field: Field, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]):
    """Sparse construction of a FLINT matrix from ``(i, j, value)`` triples.

    Repeated positions are summed.
    """
    if isinstance(field, PrimeField):
        m = flint.nmod_mat(nrows, ncols, field.p)
        for i, j, v in entries:
            m[i, j] = (int(m[i, j]) + field(v)) % field.p
        return m
    m = flint.fmpq_mat(nrows, ncols)
    for i, j, v in entries:
        v = Fraction(v)
        m[i, j] = m[i, j] + flint.fmpq(v.numerator, v.denominator)
    return m


def _from_flint_scalar(field: Field, v):
    if isinstance(field, PrimeField):
        return int(v)
    return Fraction(int(v.p), int(v.q))


def flint_rank(field: Field, nrows: int, ncols: int, entries) -> int:
    if nrows == 0 or ncols == 0:
        return 0
    return flint_matrix(field, nrows, ncols, entries).rank()


def dense_entries(rows: Sequence[Sequence]) -> Iterable[tuple[int, int, object]]:
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                yield i, j, v


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class DenseMatrix:
    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> DenseMatrix:
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise InputError("ragged rows")
            flat.extend(field(v) for v in r)
        return cls(field, len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> DenseMatrix:
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> DenseMatrix:
        flat = [field.zero] * (n * n)
        for i in range(n):
            flat[i * n + i] = field.one
        return cls(field, n, n, tuple(flat))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> DenseMatrix:
        flat = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return DenseMatrix(self.field, self.cols, self.rows, tuple(flat))

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        out = []
        orows = other.tolist()
        for i in range(self.rows):
            acc = [f.zero] * other.cols
            for k, a in enumerate(self.row(i)):
                if a:
                    for j, b in enumerate(orows[k]):
                        if b:
                            acc[j] += a * b
            out.extend(f(v) for v in acc)
        return DenseMatrix(f, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence) -> list:
        f = self.field
        return [f(sum((a * b for a, b in zip(self.row(i), vec) if a and b), f.zero)) for i in range(self.rows)]

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == DenseMatrix.identity(self.field, self.rows)


def rank(m: DenseMatrix, backend: str = "flint") -> int:
    if backend == "python":
        return len(_rref_rows(m.field, m.tolist(), m.cols)[1])
    return flint_rank(m.field, m.rows, m.cols, dense_entries(m.tolist()))


def rref(m: DenseMatrix) -> tuple[DenseMatrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    rows, pivots = _rref_rows(m.field, m.tolist(), m.cols)
    return DenseMatrix.from_rows(m.field, rows, m.cols), pivots


def kernel_basis(m: DenseMatrix) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column."""
    rows, pivots = _rref_rows(m.field, m.tolist(), m.cols)
    f = m.field
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for c in free:
        v = [f.zero] * m.cols
        v[c] = f.one
        for row, pc in zip(rows, pivots):
            v[pc] = f(-row[c])
        basis.append(v)
    return basis


def det(m: DenseMatrix, backend: str = "python"):
    if m.rows != m.cols:
        raise InputError("determinant of a non-square matrix")
    f = m.field
    if m.rows == 0:
        return f.one
    if backend == "flint":
        fm = flint_matrix(f, m.rows, m.cols, dense_entries(m.tolist()))
        return _from_flint_scalar(f, fm.det())
    rows = m.tolist()
    n = m.rows
    sign = f.one
    acc = f.one
    for c in range(n):
        piv = next((i for i in range(c, n) if f(rows[i][c]) != 0), None)
        if piv is None:
            return f.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = f(-sign)
        pv = f(rows[c][c])
        acc = f(acc * pv)
        inv = f.inv(pv)
        for i in range(c + 1, n):
            fac = f(rows[i][c] * inv)
            if fac:
                rows[i] = [f(a - fac * b) for a, b in zip(rows[i], rows[c])]
    return f(sign * acc)


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (FLINT multimodular)."""
    if not rows:
        return 1
    return int(flint.fmpz_mat([list(map(int, r)) for r in rows]).det())


# ---------------------------------------------------------------------------
# streaming span


class SpanAccumulator:
    """Reduced row-echelon basis of a growing span inside ``field^ambient_dim``."""

    def __init__(self, field: Field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows: dict[int, list] = {}

    def dimension(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[list]:
        return [list(self._rows[c]) for c in self.pivots]

    def reduce(self, v: Sequence) -> list:
        """Residual of ``v`` after elimination against the current basis."""
        f = self.field
        if len(v) != self.ambient_dim:
            raise InputError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        w = [f(a) for a in v]
        for c, row in self._rows.items():
            a = w[c]
            if a:
                w = [f(x - a * y) for x, y in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def insert(self, v: Sequence) -> bool:
        f = self.field
        w = self.reduce(v)
        c = next((i for i, a in enumerate(w) if a), None)
        if c is None:
            return False
        inv = f.inv(w[c])
        w = [f(a * inv) for a in w]
        for pc, row in self._rows.items():
            a = row[c]
            if a:
                self._rows[pc] = [f(x - a * y) for x, y in zip(row, w)]
        self._rows[c] = w
        return True

    def extend(self, vectors: Iterable[Sequence]) -> int:
        """Insert many vectors at once (FLINT RREF); returns how much the dimension grew."""
        before = self.dimension()
        stacked = self.basis() + [list(v) for v in vectors]
        if not stacked:
            return 0
        fm = flint_matrix(self.field, len(stacked), self.ambient_dim, dense_entries(stacked))
        red, rk = fm.rref()
        self._rows = {}
        for i in range(rk):
            row = [_from_flint_scalar(self.field, red[i, j]) for j in range(self.ambient_dim)]
            c = next(j for j, a in enumerate(row) if a)
            self._rows[c] = row
        return self.dimension() - before


def sparse_span(field: Field, ncols: int, rows: Iterable[dict], budget: int = 1 << 22) -> list[dict]:
    """Reduced echelon basis (sparse rows) of the span of ``rows``.

    Rows are ``{column: value}`` dicts.  They are fed to FLINT in chunks so that
    no intermediate matrix holds more than about ``budget`` entries.
    """
    basis: list[dict] = []
    pending: list[dict] = []
    chunk = max(1, budget // max(ncols, 1))

    def flush() -> None:
        nonlocal basis, pending
        stacked = basis + pending
        pending = []
        if not stacked:
            return
        entries = ((i, j, v) for i, row in enumerate(stacked) for j, v in row.items())
        red, rk = flint_matrix(field, len(stacked), ncols, entries).rref()
        flat = red.entries()
        basis = []
        for i in range(rk):
            seg = flat[i * ncols : (i + 1) * ncols]
            basis.append({j: _from_flint_scalar(field, v) for j, v in enumerate(seg) if v != 0})

    for row in rows:
        if row:
            pending.append(row)
        if len(basis) + len(pending) >= max(chunk, 2 * len(basis)):
            flush()
    flush()
    return basis


def sparse_rank(field: Field, ncols: int, rows: Iterable[dict], budget: int = 1 << 22) -> int:
    if ncols == 0:
        return 0
    return len(sparse_span(field, ncols, rows, budget))
