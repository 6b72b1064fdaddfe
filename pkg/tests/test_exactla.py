from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrfun.errors import InputError
from corrfun.exactla import (
    QQ,
    DenseMatrix,
    PrimeField,
    SpanAccumulator,
    choose_field,
    det,
    field_from_spec,
    integer_det,
    is_prime,
    kernel_basis,
    rank,
    rref,
    sparse_rank,
)

matrices = st.integers(0, 6).flatmap(
    lambda r: st.integers(0, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: (rows, c)
        )
    )
)


def test_fields():
    assert QQ(Fraction(2, 4)) == Fraction(1, 2)
    f = PrimeField(7)
    assert f(-1) == 6 and f(Fraction(1, 2)) == 4
    assert field_from_spec("p:1000003") == PrimeField(1_000_003)
    assert field_from_spec({"prime": 5}) == PrimeField(5)
    assert field_from_spec("rational") is QQ
    with pytest.raises(InputError):
        field_from_spec("p:9")
    assert choose_field(4096) is QQ
    assert choose_field(4097) == PrimeField(1_000_003)
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_rank_examples():
    assert rank(DenseMatrix.identity(QQ, 4)) == 4
    assert rank(DenseMatrix.zeros(QQ, 3, 5)) == 0
    assert rank(DenseMatrix.from_rows(QQ, [[1, 2], [2, 4]])) == 1
    assert rank(DenseMatrix.from_rows(QQ, [[1, 2], [2, 4]]), backend="python") == 1


def test_kernel_det_insert_examples():
    assert kernel_basis(DenseMatrix.identity(QQ, 3)) == []
    perm = DenseMatrix.from_rows(QQ, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert det(perm) in (1, -1)
    assert det(perm) == det(perm, backend="flint")
    with pytest.raises(InputError):
        det(DenseMatrix.zeros(QQ, 2, 3))
    acc = SpanAccumulator(QQ, 3)
    assert acc.insert([1, 2, 3])
    assert not acc.insert([2, 4, 6])
    assert acc.dimension() == 1


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_properties(data):
    rows, c = data
    m = DenseMatrix.from_rows(QQ, rows, c)
    r = rank(m)
    assert r == rank(m, backend="python")
    assert r == rank(m.transpose())
    acc = SpanAccumulator(QQ, c)
    for row in rows:
        acc.insert(row)
    assert acc.dimension() == r
    acc2 = SpanAccumulator(QQ, c)
    acc2.extend(rows)
    assert acc2.basis() == acc.basis()
    assert sparse_rank(QQ, c, [{j: v for j, v in enumerate(row) if v} for row in rows]) == r
    # modular rank never exceeds rational rank, and agrees for some prime
    mod = [rank(DenseMatrix.from_rows(PrimeField(p), rows, c)) for p in (3, 1_000_003, 2_147_483_647)]
    assert all(v <= r for v in mod) and r in mod
    for v in kernel_basis(m):
        assert not any(m.apply(v))
    assert len(kernel_basis(m)) == c - r


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_backends_agree(rows):
    m = DenseMatrix.from_rows(QQ, rows)
    assert det(m) == det(m, backend="flint") == integer_det(rows)
    assert (det(m) != 0) == (rank(m) == len(rows))


def test_rref_pivots():
    red, piv = rref(DenseMatrix.from_rows(QQ, [[0, 2, 4], [1, 1, 1]]))
    assert piv == [0, 1]
    assert red.tolist() == [[1, 0, -1], [0, 1, 2]]


def test_sparse_rank_chunks():
    rows = [{i: 1, (i + 1) % 50: -1} for i in range(50)]
    assert sparse_rank(QQ, 50, rows, budget=60) == 49
    assert sparse_rank(PrimeField(7), 50, rows, budget=60) == 49
