from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibering.exactq import (
    DimensionError,
    RationalMatrix,
    Subspace,
    fixed_space,
    image,
    integer_kernel,
    intersect,
    kernel,
    matrix,
    rank_of_vectors,
    solve,
)

small = st.integers(-3, 3)


def vectors(n, count):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=count)


def subspaces(n=4, count=3):
    return vectors(n, count).map(lambda vs: Subspace(n, vs))


def matrices(max_r=4, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(RationalMatrix)


def test_basic_arithmetic():
    A = matrix([[1, 2], [3, 4]])
    assert A @ A.inverse() == RationalMatrix.identity(2)
    assert A.inverse()[0, 0] == Fraction(-2)
    assert A.trace() == 5
    assert (A - A).is_zero()
    assert A ** 2 == A @ A
    with pytest.raises(ValueError):
        A ** -1
    assert A.T.column(0) == (1, 2)


def test_singular_inverse_and_ragged():
    with pytest.raises(ZeroDivisionError):
        matrix([[1, 2], [2, 4]]).inverse()
    with pytest.raises(DimensionError):
        RationalMatrix([[1, 2], [3]])


def test_rref_is_canonical():
    A = matrix([[2, 4, 6], [1, 1, 1]])
    B = matrix([[1, 1, 1], [3, 5, 7]])
    assert A.rref() == B.rref()
    assert A.rref().rows[0] == (1, 0, -1)


def test_subspace_canonical_equality():
    U = Subspace(3, [[1, 1, 0], [0, 1, 1]])
    V = Subspace(3, [[1, 2, 1], [1, 0, -1]])
    assert U == V and hash(U) == hash(V)
    assert U.contains([1, 3, 2]) and not U.contains([1, 0, 0])
    assert U.coordinates([2, 1, -1]) is not None


def test_solve():
    A = matrix([[1, 1], [1, -1]])
    assert solve(A, [2, 0]) == (1, 1)
    assert solve(matrix([[1, 1], [1, 1]]), [1, 2]) is None


def test_integer_kernel_agrees():
    rows = [[1, 2, 3, 4], [2, 4, 6, 9]]
    assert integer_kernel(rows, 4) == kernel(matrix(rows))


def test_fixed_space():
    swap = matrix([[0, 1], [1, 0]])
    assert fixed_space([swap]) == Subspace(2, [[1, 1]])
    assert fixed_space([], 3) == Subspace.full(3)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    assert M.rank() + kernel(M).dim == M.ncols
    assert image(M).dim == M.rank()
    for v in kernel(M).basis:
        assert not any(M.apply(v))


@settings(max_examples=60, deadline=None)
@given(subspaces(), subspaces(), subspaces())
def test_intersection_laws(U, V, W):
    assert intersect(U, V) == intersect(V, U)
    assert intersect(intersect(U, V), W) == intersect(U, intersect(V, W))
    assert intersect(U, U) == U
    assert intersect(U, V) <= U
    assert (U + V).dim + intersect(U, V).dim == U.dim + V.dim


@settings(max_examples=40, deadline=None)
@given(subspaces(5, 4))
def test_annihilator_dimension(U):
    assert U.dim + U.annihilator().dim == 5
    assert U.annihilator().annihilator() == U


@settings(max_examples=40, deadline=None)
@given(vectors(4, 5))
def test_rank_of_vectors_matches_subspace(vs):
    assert rank_of_vectors(vs, 4) == Subspace(4, vs).dim
