from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liefaith.exactlinalg import (
    AmbientMismatch,
    NotASubspace,
    Subspace,
    complement_avoiding,
    format_fraction,
    identity,
    intersect,
    inverse,
    kernel,
    matmul,
    matvec,
    rank,
    rref,
    solve,
    to_fraction,
    transpose,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def test_to_fraction_rejects_floats_and_bools():
    assert to_fraction("3/4") == F(3, 4)
    assert to_fraction(2) == 2
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_rref_known():
    R, piv = rref([[2, 4, 2], [1, 2, 3], [0, 0, 0]])
    assert piv == [0, 2]
    assert R == [[1, 2, 0], [0, 0, 1]]


def test_format_fraction():
    assert format_fraction(F(-3, 6)) == "-1/2"
    assert format_fraction(F(4)) == "4"


@given(matrices())
def test_rank_nullity(A):
    n = len(A[0])
    K = kernel(A, n)
    assert rank(A) + K.dim == n
    for v in K.basis:
        assert not any(matvec(A, v))


@given(matrices())
def test_rank_of_transpose(A):
    assert rank(A) == rank(transpose(A))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_or_singular(A):
    n = len(A)
    if rank(A) == n:
        assert matmul(A, inverse(A)) == identity(n)
    else:
        with pytest.raises(ZeroDivisionError):
            inverse(A)


@given(matrices(), st.data())
def test_solve_consistency(A, data):
    n = len(A[0])
    x = data.draw(st.lists(small, min_size=n, max_size=n))
    b = matvec(A, x)
    y = solve(A, b)
    assert y is not None and matvec(A, y) == b


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


@given(matrices(cols=st.just(4)), matrices(cols=st.just(4)))
def test_intersection_dimension_formula(A, B):
    S, T = Subspace.span(A, 4), Subspace.span(B, 4)
    I = intersect(S, T)
    assert I.dim == S.dim + T.dim - (S + T).dim
    assert S.contains_space(I) and T.contains_space(I)


@given(matrices(cols=st.just(4)), matrices(cols=st.just(4)))
def test_complement_avoiding(A, B):
    S = Subspace.span(A + B, 4)
    W = Subspace.span(B, 4)
    C = complement_avoiding(S, W)
    assert C.dim + W.dim == S.dim
    assert (C + W).dim == S.dim
    assert intersect(C, W).dim == 0


def test_complement_requires_containment():
    with pytest.raises(NotASubspace):
        complement_avoiding(Subspace.coordinate([0], 2), Subspace.coordinate([1], 2))


def test_subspace_basics():
    S = Subspace.coordinate([0, 2], 3)
    assert S.is_coordinate() and S.support() == (0, 2)
    assert S.coordinates([F(3), 0, F(-1)]) == [3, -1]
    with pytest.raises(NotASubspace):
        S.coordinates([0, 1, 0])
    with pytest.raises(AmbientMismatch):
        S + Subspace.zero(2)
    assert Subspace.span([[1, 1, 0]], 3).is_coordinate() is False
