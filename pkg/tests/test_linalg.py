from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genusone.exactalg import Echelon, kernel_basis, matrix_rank, rank_mod_p, rref, sparse_rank
from genusone.exactalg.linalg import mat_vec

matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=5)
)


@pytest.mark.parametrize(
    "m, rank",
    [
        ([[1, 0], [0, 1]], 2),
        ([[1, 2], [2, 4]], 1),
        ([[0, 0, 0]], 0),
        ([[Fraction(1, 2), 1], [1, 2]], 1),
    ],
)
def test_matrix_rank(m, rank):
    assert matrix_rank(m) == rank


def test_kernel_of_zero_row():
    assert len(kernel_basis([[0, 0, 0]])) == 3


def test_kernel_of_ones():
    (v,) = kernel_basis([[1, 1]])
    assert v[0] == -v[1] != 0


def test_kernel_of_evaluated_koszul_row():
    assert len(kernel_basis([[2, 3]])) == 1


def test_kernel_without_rows_needs_width():
    with pytest.raises(ValueError):
        kernel_basis([])
    assert len(kernel_basis([], 2)) == 2


def test_echelon_reports_new_pivots():
    e = Echelon()
    assert e.add({0: Fraction(2), 1: Fraction(4)})
    assert not e.add({0: Fraction(1), 1: Fraction(2)})
    assert e.add({1: Fraction(1)})
    assert e.rank == 2


@given(matrices)
def test_rank_nullity(m):
    assert matrix_rank(m) + len(kernel_basis(m)) == len(m[0])


@given(matrices)
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m):
        assert all(x == 0 for x in mat_vec(m, v))


@given(matrices)
def test_sparse_rank_agrees(m):
    rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in m]
    assert sparse_rank(rows) == matrix_rank(m)


@given(matrices)
def test_prime_field_rank_bounds_rational_rank(m):
    # reduction mod p can only lose rank, and a large prime rarely does
    assert rank_mod_p(m, 7) <= matrix_rank(m)
    assert rank_mod_p(m, 1_000_003) == matrix_rank(m)


@given(matrices)
def test_rref_rows_are_reduced(m):
    red, pivots = rref(m)
    for i, c in enumerate(pivots):
        assert red[i][c] == 1
        assert all(red[k][c] == 0 for k in range(len(red)) if k != i)
