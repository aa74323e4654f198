"""Random test objects: nilpotent algebras, two-step algebras, representations."""
from __future__ import annotations

import random
from fractions import Fraction

from .exactlinalg import (
    ZERO,
    Matrix,
    Subspace,
    commutator,
    identity,
    inverse,
    kernel,
    matmul,
    zeros,
)
from .lie import LieAlgebra, Representation, derived, direct_sum_reps, adjoint


def _flat(M: Matrix) -> list[Fraction]:
    return [x for row in M for x in row]


def _unflat(v, d: int) -> Matrix:
    return [list(v[r * d:(r + 1) * d]) for r in range(d)]


def random_strict_upper(rng: random.Random, d: int, density: float = 0.5, lo: int = -2, hi: int = 2) -> Matrix:
    M = zeros(d, d)
    for r in range(d):
        for c in range(r + 1, d):
            if rng.random() < density:
                M[r][c] = Fraction(rng.randint(lo, hi))
    return M


def matrix_algebra(gens: list[Matrix], max_dim: int | None = None) -> tuple[LieAlgebra, Representation] | None:
    """Lie algebra generated by ``gens`` (closed under commutators) together
    with its defining representation.  ``None`` when it gets bigger than ``max_dim``."""
    d = len(gens[0])
    S = Subspace.span([_flat(M) for M in gens], d * d)
    frontier = list(S.basis)
    while frontier:
        new = []
        for a in frontier:
            for b in list(S.basis):
                c = _flat(commutator(_unflat(a, d), _unflat(b, d)))
                if not S.contains(c):
                    S = S + Subspace.span([c], d * d)
                    new.append(c)
                    if max_dim is not None and S.dim > max_dim:
                        return None
        frontier = new
    basis = [_unflat(v, d) for v in S.basis]
    n = len(basis)
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            coords = S.coordinates(_flat(commutator(basis[i], basis[j])))
            vec = {k: c for k, c in enumerate(coords) if c}
            if vec:
                br[(i, j)] = vec
    L = LieAlgebra(n, br)
    return L, Representation.of(L, basis)


def random_nilpotent(rng: random.Random, max_dim: int = 6, size: int | None = None,
                     min_dim: int = 1) -> tuple[LieAlgebra, Representation]:
    """Random nilpotent algebra of dimension in ``[min_dim, max_dim]`` inside
    strictly upper triangular matrices, with its defining representation."""
    while True:
        d = size or rng.randint(3, 5)
        k = rng.randint(1, 4)
        gens = [random_strict_upper(rng, d, rng.choice((0.3, 0.5, 0.8))) for _ in range(k)]
        if all(not any(_flat(M)) for M in gens):
            continue
        res = matrix_algebra(gens, max_dim)
        if res is not None and res[0].dim >= min_dim:
            return res


def random_two_step(rng: random.Random, max_dim: int = 8) -> LieAlgebra:
    """Random nilpotent algebra of class exactly two: ``[V, V] in Z``."""
    while True:
        n = rng.randint(3, max_dim)
        z = rng.randint(1, max(1, n // 2))
        v = n - z
        if v < 2:
            continue
        br = {}
        for i in range(v):
            for j in range(i + 1, v):
                if rng.random() < 0.6:
                    vec = {k: Fraction(rng.randint(-2, 2)) for k in range(v, n)}
                    vec = {k: c for k, c in vec.items() if c}
                    if vec:
                        br[(i, j)] = vec
        if br:
            return LieAlgebra(n, br)


def random_unimodular(rng: random.Random, d: int) -> Matrix:
    """Product of unit lower and upper triangular integer matrices."""
    U, Lo = identity(d), identity(d)
    for r in range(d):
        for c in range(r + 1, d):
            U[r][c] = Fraction(rng.randint(-1, 1))
            Lo[c][r] = Fraction(rng.randint(-1, 1))
    return matmul(Lo, U)


def random_characters(L: LieAlgebra, rng: random.Random, count: int) -> list[list[Fraction]]:
    """Linear forms vanishing on ``[L, L]``."""
    D = derived(L)
    K = kernel(D.rows(), L.dim) if D.dim else Subspace.full(L.dim)
    out = []
    for _ in range(count):
        lam = [ZERO] * L.dim
        for b in K.basis:
            c = Fraction(rng.randint(-3, 3))
            lam = [x + c * y for x, y in zip(lam, b)]
        out.append(lam)
    return out


def twist(rho: Representation, lam: list[Fraction]) -> Representation:
    """``rho + lam * Id``; still a representation because ``lam`` kills ``[L, L]``."""
    mats = []
    for i, M in enumerate(rho.matrices):
        mats.append([[M[r][c] + (lam[i] if r == c else ZERO) for c in range(rho.dim)] for r in range(rho.dim)])
    return Representation.of(rho.algebra, mats)


def random_triangular_rep(rng: random.Random, max_dim: int = 5) -> tuple[LieAlgebra, Representation, Matrix]:
    """A nilpotent algebra with a representation that is a conjugated direct
    sum of character twists of nilpotent ones.  Returns ``(L, rho, P)``."""
    L, defining = random_nilpotent(rng, max_dim, min_dim=2)
    pieces = []
    lams = random_characters(L, rng, rng.randint(1, 3))
    for lam in lams:
        base = rng.choice(("defining", "adjoint", "trivial"))
        if base == "defining":
            r = defining
        elif base == "adjoint" and L.dim <= 4:
            r = adjoint(L)
        else:
            r = Representation.of(L, [zeros(1, 1) for _ in range(L.dim)])
        pieces.append(twist(r, lam))
    rho = direct_sum_reps(L, pieces)
    P = random_unimodular(rng, rho.dim)
    Pinv = inverse(P)
    conj = Representation.of(L, [matmul(P, matmul(M, Pinv)) for M in rho.matrices])
    return L, conj, P


__all__ = ["random_nilpotent", "random_two_step", "random_triangular_rep", "matrix_algebra",
           "random_characters", "twist", "random_unimodular", "random_strict_upper"]
