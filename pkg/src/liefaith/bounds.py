"""Closed-form and combinatorial bounds on the minimal faithful dimension."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lie import LieAlgebra, is_filiform, lower_central_series, NotNilpotent


@lru_cache(maxsize=None)
def _p_row(k: int, top: int) -> tuple[int, ...]:
    # p_k(0..top) by p_k(j) = p_{k-1}(j) + p_k(j-k)
    row = [1] + [0] * top
    for part in range(1, k + 1):
        for j in range(part, top + 1):
            row[j] += row[j - part]
    return tuple(row)


def p_restricted(k: int, j: int) -> int:
    """Number of partitions of ``j`` into parts of size at most ``k``.

    ``p_k(0) = 1`` for every ``k`` and ``p_0(j) = 0`` for ``j >= 1``.
    """
    if k < 0 or j < 0:
        raise ValueError("k and j must be non-negative")
    return _p_row(k, j)[j]


def p_row(k: int, top: int) -> tuple[int, ...]:
    """``(p_k(0), ..., p_k(top))``."""
    return _p_row(k, top)


def _check_range(n: int, beta: int):
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if not 1 <= beta <= n - 1:
        raise ValueError(f"beta must lie in 1..{n - 1}, got {beta}")


def f(n: int, beta: int) -> int:
    """Dimension of the filiform quotient module for an abelian ideal of
    dimension ``beta``: ``beta + sum_{j=0}^{n-2} p_{n-1-beta}(j)``."""
    _check_range(n, beta)
    return beta + sum(p_row(n - 1 - beta, n - 2))


def closed_form(n: int, beta: int) -> int | None:
    """Closed expressions for ``beta`` in ``{n-1, n-2, n-3}`` (``n >= 4``)."""
    if n < 4:
        return None
    if beta == n - 1:
        return n
    if beta == n - 2:
        return 2 * n - 3
    if beta == n - 3:
        num = n * n + 3 * n - 12 + 2 * (n // 2)
        assert num % 4 == 0
        return num // 4
    return None


def remark_bound(n: int, beta: int) -> Fraction:
    """``beta + (2n - beta - 3)^(n-beta-1) / (n-beta-1)!``; asserts it bounds ``f``."""
    _check_range(n, beta)
    e = n - beta - 1
    value = beta + Fraction((2 * n - beta - 3) ** e, math.factorial(e))
    assert f(n, beta) <= value
    return value


def half_beta_bound(n: int) -> int:
    """``n - 1 + sum_{j=0}^{n-2} p_{floor(n/2)-1}(j)``."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return n - 1 + sum(p_row(n // 2 - 1, n - 2))


@dataclass(frozen=True)
class SqrtBound:
    """``integer + coeff * sqrt(radicand)`` held exactly."""

    integer: int
    coeff: Fraction
    radicand: int

    def ceil(self) -> int:
        # smallest k with k >= coeff*sqrt(r), i.e. k^2 >= coeff^2 r
        q = self.coeff * self.coeff * self.radicand
        k = math.isqrt(q.numerator // q.denominator)
        while k * k * q.denominator < q.numerator:
            k += 1
        return self.integer + k

    def __str__(self):
        return f"{self.integer} + {self.coeff}*sqrt({self.radicand})"


def general_bound_value(dim_q: int, r: int) -> SqrtBound:
    """``dim_q + (3 / sqrt r) 2^r`` written as ``dim_q + (3 2^r / r) sqrt r``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return SqrtBound(dim_q, Fraction(3 * 2 ** r, r), r)


def ceil_sqrt(n: int) -> int:
    k = math.isqrt(n)
    return k if k * k == n else k + 1


@dataclass
class MuEstimate:
    lower: int
    upper: int | None = None
    sources: list[tuple[str, int, str, str]] = field(default_factory=list)

    def add(self, name: str, value: int, kind: str, tag: str = "computed"):
        """Record a bound; ``kind`` is ``"lower"`` or ``"upper"``."""
        self.sources.append((name, value, kind, tag))
        if kind == "lower":
            self.lower = max(self.lower, value)
        else:
            self.upper = value if self.upper is None else min(self.upper, value)

    def consistent(self) -> bool:
        return self.upper is None or self.lower <= self.upper

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "sources": [{"name": n, "value": v, "kind": k, "tag": t} for n, v, k, t in self.sources],
        }


def mu_lower(L: LieAlgebra) -> MuEstimate:
    """Largest applicable lower bound: ``ceil(sqrt(dim))``, ``c + 1`` for
    nilpotent algebras of dimension at least two, and ``n`` for filiform ones."""
    est = MuEstimate(0)
    est.add("sqrt_dim", ceil_sqrt(L.dim), "lower")
    try:
        _, c = lower_central_series(L)
    except NotNilpotent:
        c = None
    if c is not None and L.dim >= 2:
        est.add("class_plus_one", c + 1, "lower")
    if is_filiform(L):
        est.add("filiform_dim", L.dim, "lower")
    return est
