"""Lie algebras given by structure constants over Q, and their representations.

Basis indices are 0-based inside the library.  Only the brackets
``[x_i, x_j]`` with ``i < j`` are stored; the others follow from
antisymmetry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exactlinalg import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    commutator,
    intersect,
    is_zero_matrix,
    kernel,
    lin_comb,
    matvec,
    rank,
    solve,
    to_fraction,
    transpose,
    unit_vector,
    zeros,
)


class LieError(ValueError):
    """Base class for structural failures; ``code`` is a stable name for reports."""

    code = "LieError"


class JacobiViolation(LieError):
    code = "JacobiViolation"

    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"Jacobi identity fails on basis triple ({i + 1}, {j + 1}, {k + 1})")
        self.triple = (i, j, k)


class NotNilpotent(LieError):
    code = "NotNilpotent"


class NotDerivation(LieError):
    code = "NotDerivation"


class CenterDegenerate(LieError):
    code = "CenterDegenerate"


class NotAnIdeal(LieError):
    code = "NotAnIdeal"


class NotASubalgebra(LieError):
    code = "NotASubalgebra"


class NotInjective(LieError):
    code = "NotInjective"


class NotFaithfulAction(LieError):
    code = "NotFaithfulAction"


Brackets = Mapping[tuple[int, int], Mapping[int, Fraction]]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    brackets: dict[tuple[int, int], dict[int, Fraction]] = field(default_factory=dict)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in self.brackets.items():
            if not (0 <= i < j < self.dim):
                raise IndexError(f"bracket index pair ({i}, {j}) must satisfy 0 <= i < j < {self.dim}")
            v = {}
            for k, c in vec.items():
                if not 0 <= k < self.dim:
                    raise IndexError(f"bracket target {k} out of range")
                c = to_fraction(c)
                if c:
                    v[k] = c
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "brackets", clean)
        table = [[() for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), vec in clean.items():
            items = tuple(sorted(vec.items()))
            table[i][j] = items
            table[j][i] = tuple((k, -c) for k, c in items)
        object.__setattr__(self, "_table", table)

    def basis_bracket(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """``[x_i, x_j]`` as sparse ``(k, c)`` pairs."""
        return self._table[i][j]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        nz_u = [(i, a) for i, a in enumerate(u) if a]
        nz_v = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nz_u:
            row = self._table[i]
            for j, b in nz_v:
                for k, c in row[j]:
                    out[k] += a * b * c
        return out

    def ad(self, u: Sequence[Fraction] | int) -> Matrix:
        """Matrix of ``ad(u)``; column ``j`` holds ``[u, x_j]``."""
        if isinstance(u, int):
            u = unit_vector(self.dim, u)
        cols = [self.bracket(u, unit_vector(self.dim, j)) for j in range(self.dim)]
        return transpose(cols) if cols else []

    def is_abelian(self) -> bool:
        return not self.brackets

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"x{i + 1}"

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, nonzero_brackets={len(self.brackets)})"


def from_one_based(dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]], labels=None) -> LieAlgebra:
    """Build from 1-based ``{(i, j): {k: c}}`` with arbitrary ``i != j``."""
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), vec in brackets.items():
        if i == j:
            raise ValueError("bracket of a basis vector with itself is zero by definition")
        sign = ONE if i < j else -ONE
        key = (min(i, j) - 1, max(i, j) - 1)
        slot = out.setdefault(key, {})
        for k, c in vec.items():
            slot[k - 1] = slot.get(k - 1, ZERO) + sign * to_fraction(c)
    return LieAlgebra(dim, out, tuple(labels) if labels else None)


def validate(L: LieAlgebra) -> LieAlgebra:
    """Check the Jacobi identity on every basis triple; return ``L`` or raise."""
    n = L.dim
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = (unit_vector(n, t) for t in (i, j, k))
        s = L.bracket(ei, L.bracket(ej, ek))
        t = L.bracket(ej, L.bracket(ek, ei))
        u = L.bracket(ek, L.bracket(ei, ej))
        if any(a + b + c for a, b, c in zip(s, t, u)):
            raise JacobiViolation(i, j, k)
    return L


def satisfies_jacobi(L: LieAlgebra) -> bool:
    try:
        validate(L)
    except JacobiViolation:
        return False
    return True


# ---------------------------------------------------------------------------
# standard families

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


def heisenberg(k: int = 1) -> LieAlgebra:
    """Heisenberg algebra of dimension ``2k+1``: ``[x_i, x_{k+i}] = x_{2k+1}``."""
    n = 2 * k + 1
    return LieAlgebra(n, {(i, k + i): {n - 1: ONE} for i in range(k)})


def standard_filiform(n: int) -> LieAlgebra:
    """``[x_1, x_i] = x_{i+1}`` for ``2 <= i < n``."""
    return LieAlgebra(n, {(0, i): {i + 1: ONE} for i in range(1, n - 1)})


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    br = dict(A.brackets)
    s = A.dim
    for (i, j), v in B.brackets.items():
        br[(i + s, j + s)] = {k + s: c for k, c in v.items()}
    return LieAlgebra(A.dim + B.dim, br)


# ---------------------------------------------------------------------------
# subspaces attached to an algebra

def bracket_spaces(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    vecs = [L.bracket(a, b) for a in A.basis for b in B.basis]
    return Subspace.span(vecs, L.dim)


def derived(L: LieAlgebra) -> Subspace:
    vecs = []
    for (i, j) in L.brackets:
        vecs.append(L.bracket(unit_vector(L.dim, i), unit_vector(L.dim, j)))
    return Subspace.span(vecs, L.dim)


def center(L: LieAlgebra) -> Subspace:
    if L.dim == 0:
        return Subspace.zero(0)
    rows = [r for i in range(L.dim) for r in L.ad(i)]
    return kernel(rows, L.dim)


def lower_central_series(L: LieAlgebra) -> tuple[list[Subspace], int]:
    """``[L^1, L^2, ..., L^{c+1} = 0]`` and the class ``c``.

    Raises :class:`NotNilpotent` when the series stabilises above zero.
    """
    series = [Subspace.full(L.dim)]
    full = series[0]
    while series[-1].dim:
        nxt = bracket_spaces(L, full, series[-1])
        if nxt.dim == series[-1].dim:
            raise NotNilpotent(f"lower central series stabilises at dimension {nxt.dim}")
        series.append(nxt)
    return series, len(series) - 1


def nilpotency_class(L: LieAlgebra) -> int:
    return lower_central_series(L)[1]


def is_nilpotent(L: LieAlgebra) -> bool:
    try:
        lower_central_series(L)
    except NotNilpotent:
        return False
    return True


def is_filiform(L: LieAlgebra) -> bool:
    if L.dim < 3 or not is_nilpotent(L):
        return False
    return nilpotency_class(L) == L.dim - 1


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    full = Subspace.full(L.dim)
    return S.contains_space(bracket_spaces(L, full, S))


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return S.contains_space(bracket_spaces(L, S, S))


# ---------------------------------------------------------------------------
# basis changes and restrictions

def restrict(L: LieAlgebra, rows: Sequence[Sequence[Fraction]]) -> LieAlgebra:
    """Structure constants of the subalgebra spanned by ``rows`` in that basis."""
    k = len(rows)
    cols = transpose([list(r) for r in rows]) if rows else []
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(k):
        for b in range(a + 1, k):
            v = L.bracket(rows[a], rows[b])
            if not any(v):
                continue
            coords = solve(cols, v)
            if coords is None:
                raise NotASubalgebra("span is not closed under the bracket")
            br[(a, b)] = {c: x for c, x in enumerate(coords) if x}
    return LieAlgebra(k, br)


def change_basis(L: LieAlgebra, P: Matrix) -> LieAlgebra:
    """Algebra in the basis ``y_j = sum_i P[i][j] x_i``."""
    return restrict(L, transpose(P))


def adapted_basis(L: LieAlgebra) -> tuple[LieAlgebra, Matrix]:
    """Re-express a nilpotent algebra so every lower central series term is a
    basis suffix.  Returns the new algebra and the change-of-basis matrix
    (columns are the new basis vectors in old coordinates)."""
    series, _ = lower_central_series(L)
    vecs: list[list[Fraction]] = []
    for upper, lower in zip(series, series[1:]):
        acc = lower
        for i in range(L.dim):
            # prefer standard vectors so coordinate-aligned inputs are unchanged
            e = unit_vector(L.dim, i)
            if upper.contains(e) and not acc.contains(e):
                vecs.append(e)
                acc = acc + Subspace.span([e], L.dim)
        for row in upper.basis:
            if not acc.contains(row):
                vecs.append(list(row))
                acc = acc + Subspace.span([row], L.dim)
    P = transpose(vecs)
    return change_basis(L, P), P


class AbelianSplit(NamedTuple):
    ell: int
    inner: LieAlgebra
    inner_basis: Matrix
    abelian_basis: Matrix


def split_abelian_factor(L: LieAlgebra) -> AbelianSplit:
    """Write ``L = Q^ell + M`` with ``Z(M)`` inside ``[M, M]``."""
    Z, D = center(L), derived(L)
    ZD = intersect(Z, D)
    from .exactlinalg import complement_avoiding

    A = complement_avoiding(Z, ZD)
    ell = A.dim
    acc = A + D
    rows = [list(r) for r in D.basis]
    for i in range(L.dim):
        e = unit_vector(L.dim, i)
        if not acc.contains(e):
            rows.append(e)
            acc = acc + Subspace.span([e], L.dim)
    M = restrict(L, rows) if rows else LieAlgebra(0, {})
    return AbelianSplit(ell, M, rows, [list(r) for r in A.basis])


# ---------------------------------------------------------------------------
# derivations

def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    n = L.dim
    images = [[D[r][i] for r in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = matvec(D, L.bracket(unit_vector(n, i), unit_vector(n, j)))
            r1 = L.bracket(images[i], unit_vector(n, j))
            r2 = L.bracket(unit_vector(n, i), images[j])
            if any(a - b - c for a, b, c in zip(lhs, r1, r2)):
                return False
    return True


# ---------------------------------------------------------------------------
# representations

@dataclass(frozen=True, eq=False)
class Representation:
    """``matrices[i]`` is the action of basis vector ``x_i`` on column vectors."""

    algebra: LieAlgebra
    matrices: tuple[Matrix, ...]
    dim: int

    @classmethod
    def of(cls, algebra: LieAlgebra, matrices: Sequence[Matrix]) -> "Representation":
        mats = tuple([[to_fraction(a) for a in row] for row in M] for M in matrices)
        d = len(mats[0]) if mats else 0
        if len(mats) != algebra.dim:
            raise ValueError(f"need {algebra.dim} matrices, got {len(mats)}")
        for M in mats:
            if len(M) != d or any(len(r) != d for r in M):
                raise ValueError("matrices must all be square of the same size")
        return cls(algebra, mats, d)

    def act(self, x: Sequence[Fraction]) -> Matrix:
        return lin_comb(x, self.matrices, self.dim, self.dim)


class RepCheck(NamedTuple):
    is_module: bool
    kernel: Subspace

    @property
    def faithful(self) -> bool:
        return self.is_module and self.kernel.dim == 0


def is_module(L: LieAlgebra, mats: Sequence[Matrix]) -> bool:
    n = L.dim
    d = len(mats[0]) if mats else 0
    for i in range(n):
        for j in range(i + 1, n):
            lhs = lin_comb([c for c in _dense(L.basis_bracket(i, j), n)], mats, d, d)
            if lhs != commutator(mats[i], mats[j]):
                return False
    return True


def _dense(sparse, n) -> Vector:
    v = [ZERO] * n
    for k, c in sparse:
        v[k] = c
    return v


def rep_kernel(mats: Sequence[Matrix], n: int) -> Subspace:
    """``{c : sum c_i M_i = 0}``."""
    if not mats or not mats[0]:
        return Subspace.full(n)
    d = len(mats[0])
    rows = [[mats[i][r][c] for i in range(n)] for r in range(d) for c in range(d)]
    rows = [r for r in rows if any(r)]
    return kernel(rows, n)


def verify_representation(L: LieAlgebra, rho: Representation | Sequence[Matrix]) -> RepCheck:
    mats = rho.matrices if isinstance(rho, Representation) else rho
    return RepCheck(is_module(L, mats), rep_kernel(mats, L.dim))


def adjoint(L: LieAlgebra) -> Representation:
    return Representation.of(L, [L.ad(i) for i in range(L.dim)])


def direct_sum_reps(L: LieAlgebra, reps: Iterable[Representation]) -> Representation:
    reps = list(reps)
    d = sum(r.dim for r in reps)
    mats = []
    for i in range(L.dim):
        M = zeros(d, d)
        off = 0
        for r in reps:
            for a in range(r.dim):
                for b in range(r.dim):
                    M[off + a][off + b] = r.matrices[i][a][b]
            off += r.dim
        mats.append(M)
    return Representation.of(L, mats)


def pull_back(rep: Representation, L: LieAlgebra, P: Matrix) -> Representation:
    """Given ``rep`` of ``L'`` with basis ``y_j = sum_i P[i][j] x_i``, return the
    representation on the basis ``x_i`` of the same algebra ``L``."""
    from .exactlinalg import inverse

    Q = inverse(P)
    n = L.dim
    mats = [rep.act([Q[j][i] for j in range(n)]) for i in range(n)]
    return Representation.of(L, mats)


def extend_by_derivation(L: LieAlgebra, D: Matrix) -> Representation:
    """Faithful module of dimension ``dim L + 1`` from a derivation that is
    invertible on the center: the adjoint action of ``<D> x L`` restricted to L.

    Coordinate 0 of the module is the adjoined derivation.
    """
    n = L.dim
    D = [[to_fraction(a) for a in row] for row in D]
    if not is_derivation(L, D):
        raise NotDerivation("matrix does not satisfy the Leibniz rule")
    Z = center(L)
    images = [matvec(D, z) for z in Z.basis]
    if Z.dim == 0 or rank(images) < Z.dim:
        raise CenterDegenerate("derivation is singular on the center")
    mats = []
    for i in range(n):
        M = zeros(n + 1, n + 1)
        Dx = [D[r][i] for r in range(n)]
        for r in range(n):
            M[r + 1][0] = -Dx[r]
        adx = L.ad(i)
        for r in range(n):
            for c in range(n):
                M[r + 1][c + 1] = adx[r][c]
        mats.append(M)
    rep = Representation.of(L, mats)
    chk = verify_representation(L, rep)
    assert chk.faithful, "extension by derivation is not faithful"
    return rep


@dataclass(frozen=True, eq=False)
class SemidirectData:
    """``g = d x| n`` where ``n`` is spanned by ``inner_indices`` of ``g``."""

    algebra: LieAlgebra
    inner: LieAlgebra
    inner_indices: tuple[int, ...]
    outer_indices: tuple[int, ...]
    derivations: tuple[Matrix, ...]
    outer: LieAlgebra

    @property
    def outer_dim(self) -> int:
        return len(self.outer_indices)


def semidirect_decompose(L: LieAlgebra, ideal_indices: Iterable[int]) -> SemidirectData:
    inner = tuple(sorted(set(ideal_indices)))
    outer = tuple(i for i in range(L.dim) if i not in inner)
    pos = {g: a for a, g in enumerate(inner)}
    N = Subspace.coordinate(inner, L.dim)
    if not is_ideal(L, N):
        raise NotAnIdeal("selected basis vectors do not span an ideal")
    Cs = Subspace.coordinate(outer, L.dim)
    if not is_subalgebra(L, Cs):
        raise NotASubalgebra("complement of the ideal is not a subalgebra")
    n_alg = restrict(L, [unit_vector(L.dim, i) for i in inner])
    o_alg = restrict(L, [unit_vector(L.dim, i) for i in outer])
    ders = []
    for a in outer:
        M = zeros(len(inner), len(inner))
        for col, i in enumerate(inner):
            for k, c in L.basis_bracket(a, i):
                M[pos[k]][col] = c
        ders.append(M)
    if rank([[x for row in M for x in row] for M in ders]) < len(ders):
        raise NotInjective("complement does not act faithfully on the ideal; "
                           "split off the abelian factor first")
    return SemidirectData(L, n_alg, inner, outer, tuple(ders), o_alg)


def affine_embed(derivations: Sequence[Matrix], abelian_dim: int) -> tuple[LieAlgebra, Representation]:
    """Faithful module of dimension ``r + 1`` for ``B x| Q^r``.

    ``derivations`` are the matrices ``delta(b_k)`` of a basis of ``B``;
    they must be linearly independent and closed under commutators.
    Basis of the returned algebra: ``b_1..b_s, a_1..a_r``.
    """
    r = abelian_dim
    dl = [[[to_fraction(a) for a in row] for row in M] for M in derivations]
    s = len(dl)
    flat = [[x for row in M for x in row] for M in dl]
    if s and rank(flat) < s:
        raise NotFaithfulAction("delta is not injective on B")
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    cols = transpose(flat) if flat else []
    for k in range(s):
        for l in range(k + 1, s):
            C = commutator(dl[k], dl[l])
            if is_zero_matrix(C):
                continue
            coords = solve(cols, [x for row in C for x in row])
            if coords is None:
                raise NotASubalgebra("delta(B) is not closed under commutators")
            br[(k, l)] = {t: c for t, c in enumerate(coords) if c}
        for i in range(r):
            v = {s + row: dl[k][row][i] for row in range(r) if dl[k][row][i]}
            if v:
                br[(k, s + i)] = v
    G = LieAlgebra(s + r, br)
    mats = []
    for k in range(s):
        M = zeros(r + 1, r + 1)
        for a in range(r):
            for b in range(r):
                M[a][b] = dl[k][a][b]
        mats.append(M)
    for i in range(r):
        M = zeros(r + 1, r + 1)
        M[i][r] = ONE
        mats.append(M)
    rep = Representation.of(G, mats)
    return G, rep

