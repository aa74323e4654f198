"""Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`fractions.Fraction`.  Subspaces
are stored by their reduced row-echelon basis, which makes equality of
subspaces a structural comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class AmbientMismatch(ValueError):
    pass


class NotASubspace(ValueError):
    """Raised when a subspace is expected to contain another and does not."""


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions and strings like ``"-3/4"`` to a Fraction.

    Floats are rejected: nothing in this package is allowed to be inexact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[to_fraction(a) for a in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return v


def copy_matrix(A: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(r) for r in A]


def transpose(A: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def matmul(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]]) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * n
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(n):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in A]


def mat_add(A, B) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c: Fraction, A) -> Matrix:
    return [[c * a for a in row] for row in A]


def lin_comb(coeffs: Sequence[Fraction], mats: Sequence[Matrix], m: int, n: int) -> Matrix:
    out = zeros(m, n)
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for i in range(m):
            row, orow = M[i], out[i]
            for j in range(n):
                if row[j]:
                    orow[j] += c * row[j]
    return out


def commutator(A, B) -> Matrix:
    return mat_sub(matmul(A, B), matmul(B, A))


def is_zero_matrix(A) -> bool:
    return all(not a for row in A for a in row)


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped.

    Returns the nonzero rows and their pivot columns.
    """
    M = [[to_fraction(a) for a in row] for row in A]
    if not M:
        return [], []
    nrows, ncols = len(M), len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        if piv != 1:
            inv = 1 / piv
            M[r] = [a * inv for a in M[r]]
        prow = M[r]
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A) -> int:
    return len(rref(A)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held as its reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
        R, piv = rref(rows)
        return cls(ambient_dim, tuple(tuple(r) for r in R), tuple(piv))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(identity(n), n)

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int) -> "Subspace":
        return cls.span([unit_vector(n, i) for i in sorted(set(indices))], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        w = [to_fraction(a) for a in v]
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        w[j] -= f * row[j]
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains(r) for r in other.basis)

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients of ``v`` in the echelon basis; ``v`` must lie in the span."""
        if not self.contains(v):
            raise NotASubspace("vector is not in the subspace")
        return [to_fraction(v[p]) for p in self.pivots]

    def is_coordinate(self) -> bool:
        """True when spanned by standard basis vectors."""
        return all(sum(1 for a in row if a) == 1 for row in self.basis)

    def support(self) -> tuple[int, ...]:
        return self.pivots if self.is_coordinate() else ()

    def rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def kernel(A: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Null space ``{x : A x = 0}``.  ``ncols`` is needed when ``A`` has no rows."""
    if ncols is None:
        if not A:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(A[0])
    if not A:
        return Subspace.full(ncols)
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in set(piv)]
    vecs = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(R, piv):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def intersect(S1: Subspace, S2: Subspace) -> Subspace:
    _check_ambient(S1, S2)
    n = S1.ambient_dim
    if not S1.dim or not S2.dim:
        return Subspace.zero(n)
    # a.S1 - b.S2 = 0, read off the S1 combination
    k1 = S1.dim
    M = [[S1.basis[i][c] for i in range(k1)] + [-S2.basis[j][c] for j in range(S2.dim)]
         for c in range(n)]
    K = kernel(M, k1 + S2.dim)
    vecs = []
    for sol in K.basis:
        v = [ZERO] * n
        for i in range(k1):
            if sol[i]:
                for c in range(n):
                    v[c] += sol[i] * S1.basis[i][c]
        vecs.append(v)
    return Subspace.span(vecs, n)


def complement_avoiding(S: Subspace, W: Subspace) -> Subspace:
    """A complement of ``W`` inside ``S``.

    Scans the echelon basis of ``S`` in pivot order and keeps each vector not
    already in the span of ``W`` and the vectors kept so far.
    """
    _check_ambient(S, W)
    if not S.contains_space(W):
        raise NotASubspace("W is not contained in S")
    acc = W
    kept = []
    for row in S.basis:
        if not acc.contains(row):
            kept.append(row)
            acc = Subspace.span(list(acc.basis) + [row], S.ambient_dim)
    return Subspace.span(kept, S.ambient_dim)


def solve(A: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``A x = b`` or ``None`` if inconsistent."""
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    aug = [list(A[i]) + [to_fraction(b[i])] for i in range(m)]
    R, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(R, piv):
        x[p] = row[n]
    return x


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    aug = [list(map(to_fraction, A[i])) + unit_vector(n, i) for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
