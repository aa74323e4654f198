import math
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liefaith.bounds import (
    MuEstimate,
    SqrtBound,
    ceil_sqrt,
    closed_form,
    f,
    general_bound_value,
    half_beta_bound,
    mu_lower,
    p_restricted,
    p_row,
    remark_bound,
)
from liefaith.lie import LieAlgebra, heisenberg, standard_filiform


def brute_partitions(k, j):
    """Count multisets of parts in 1..k summing to j by direct enumeration."""
    if j == 0:
        return 1
    if k == 0:
        return 0
    count = 0
    for size in range(1, j + 1):
        for parts in combinations_with_replacement(range(1, k + 1), size):
            if sum(parts) == j:
                count += 1
    return count


def test_p4_row():
    assert p_row(4, 8) == (1, 1, 2, 3, 5, 6, 9, 11, 15)


def test_conventions():
    assert p_restricted(0, 5) == 0
    assert p_restricted(3, 0) == 1
    assert p_restricted(0, 0) == 1
    assert p_restricted(3, 4) == 4


@given(st.integers(0, 7), st.integers(0, 12))
def test_partitions_against_enumeration(k, j):
    assert p_restricted(k, j) == brute_partitions(k, j)


@given(st.integers(0, 30), st.integers(0, 30))
def test_partition_monotone_and_saturating(k, j):
    assert p_restricted(k, j) <= p_restricted(k + 1, j)
    if k >= j:
        assert p_restricted(k, j) == p_restricted(j, j)


def test_negative_arguments():
    with pytest.raises(ValueError):
        p_restricted(-1, 2)


def test_f_values():
    assert f(10, 5) == 58
    assert [f(4, b) for b in (3, 2, 1)] == [4, 5, 5]


@pytest.mark.parametrize("n, beta", [(2, 1), (5, 0), (5, 5)])
def test_f_range(n, beta):
    with pytest.raises(ValueError):
        f(n, beta)


@pytest.mark.parametrize("n", range(4, 31))
def test_closed_forms(n):
    assert closed_form(n, n - 1) == f(n, n - 1) == n
    assert closed_form(n, n - 2) == f(n, n - 2) == 2 * n - 3
    assert closed_form(n, n - 3) == f(n, n - 3)
    assert 4 * f(n, n - 3) == n * n + 3 * n - 12 + 2 * (n // 2)


@pytest.mark.parametrize("n", range(3, 21))
def test_monotone_in_beta(n):
    vals = [f(n, b) for b in range(n - 1, 0, -1)]
    assert vals == sorted(vals)
    assert f(n, 2) == f(n, 1)


def test_remark_bound():
    assert remark_bound(10, 5) == 869
    assert remark_bound(10, 9) == 10 == f(10, 9)
    for n in range(3, 15):
        for b in range(1, n):
            assert f(n, b) <= remark_bound(n, b)


def test_half_beta_bound():
    assert half_beta_bound(10) == 62
    assert half_beta_bound(4) == 6
    assert half_beta_bound(3) == 3
    for n in range(3, 25):
        assert f(n, math.ceil(n / 2)) <= half_beta_bound(n)


def test_general_bound():
    assert general_bound_value(7, 1).ceil() == 13
    assert general_bound_value(0, 4).ceil() == 24
    assert general_bound_value(2, 9).ceil() == 514
    # 3 * 4 / sqrt 2 = 8.48...
    assert general_bound_value(0, 2).ceil() == 9
    with pytest.raises(ValueError):
        general_bound_value(0, 0)


@given(st.integers(0, 10**6))
def test_ceil_sqrt(n):
    k = ceil_sqrt(n)
    assert k * k >= n and (k - 1) ** 2 < n or n == 0


@given(st.integers(0, 50), st.fractions(min_value=0, max_value=20, max_denominator=7), st.integers(1, 50))
def test_sqrt_bound_ceil(a, c, r):
    k = SqrtBound(a, c, r).ceil() - a
    q = c * c * r
    assert k * k >= q and (k == 0 or (k - 1) ** 2 < q)


def test_mu_lower_examples(heis):
    assert mu_lower(standard_filiform(10)).lower == 10
    ab = mu_lower(LieAlgebra(5, {}))
    assert ab.lower == 3
    assert ("class_plus_one", 2, "lower", "computed") in ab.sources
    assert mu_lower(heis).lower == 3
    assert mu_lower(heisenberg(3)).lower == 3


def test_mu_estimate_bookkeeping():
    est = MuEstimate(0)
    est.add("a", 4, "lower")
    est.add("b", 9, "upper", "cited")
    est.add("c", 7, "upper")
    assert (est.lower, est.upper) == (4, 7) and est.consistent()
    est.add("d", 8, "lower")
    assert not est.consistent()
    assert est.as_dict()["sources"][1] == {"name": "b", "value": 9, "kind": "upper", "tag": "cited"}
