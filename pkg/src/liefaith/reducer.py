"""Shrinking faithful nilpotent modules by quotients by invariant subspaces.

Invariants ``V^g`` form a submodule (every ``rho(x)`` kills them), so any
subspace ``U`` of ``V^g`` can be divided out.  The quotient stays faithful
as long as the center still acts injectively, which is all that has to be
checked for a nilpotent algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exactlinalg import (
    Matrix,
    Subspace,
    intersect,
    is_zero_matrix,
    kernel,
    matmul,
    rank,
    zeros,
)
from .lie import LieAlgebra, LieError, Representation, center, verify_representation


class NotNilpotentModule(LieError):
    code = "NotNilpotentModule"


class NoAdmissibleComplement(LieError):
    code = "NoAdmissibleComplement"


def _is_nilpotent_matrix(M: Matrix) -> bool:
    d = len(M)
    P = M
    # squaring: P = M^(2^s) until 2^s >= d
    k = 1
    while k < d:
        P = matmul(P, P)
        k *= 2
    return is_zero_matrix(P) if d else True


def invariant_space(rho: Representation) -> Subspace:
    for M in rho.matrices:
        if not _is_nilpotent_matrix(M):
            raise NotNilpotentModule("module is not nilpotent")
    rows = [r for M in rho.matrices for r in M if any(r)]
    return kernel(rows, rho.dim) if rows else Subspace.full(rho.dim)


@dataclass(frozen=True, eq=False)
class Quotient:
    """``V/U`` with basis the cosets of the standard vectors not pivotal in ``U``."""

    rep: Representation
    kept: tuple[int, ...]


def quotient(rho: Representation, U: Subspace) -> Quotient:
    """Action on ``V/U`` for a submodule ``U``."""
    kept = tuple(j for j in range(rho.dim) if j not in set(U.pivots))
    mats = [_quotient_matrix(M, U, kept) for M in rho.matrices]
    return Quotient(Representation.of(rho.algebra, mats), kept)


def _quotient_matrix(M: Matrix, U: Subspace, kept) -> Matrix:
    d = len(kept)
    Q = zeros(d, d)
    for b, j in enumerate(kept):
        col = U.reduce([M[r][j] for r in range(len(M))])
        for a, i in enumerate(kept):
            Q[a][b] = col[i]
    return Q


def _center_acts_injectively(rho: Representation, Z: Subspace, U: Subspace) -> bool:
    kept = tuple(j for j in range(rho.dim) if j not in set(U.pivots))
    flats = []
    for z in Z.basis:
        M = rho.act(z)
        Q = _quotient_matrix(M, U, kept)
        flats.append([x for row in Q for x in row])
    return rank(flats) == Z.dim if flats else True


@dataclass
class ReductionStep:
    dim_before: int
    invariant_dim: int
    removed_dim: int
    rep: Representation
    kept: tuple[int, ...]

    @property
    def dim_after(self) -> int:
        return self.dim_before - self.removed_dim


@dataclass
class ReductionChain:
    start: Representation
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def final(self) -> Representation:
        return self.steps[-1].rep if self.steps else self.start

    @property
    def dims(self) -> list[int]:
        return [self.start.dim] + [s.dim_after for s in self.steps]

    @property
    def invariant_dims(self) -> list[int]:
        return [s.invariant_dim for s in self.steps]

    def kept_indices(self) -> list[int]:
        """Indices (into the starting basis) of the basis vectors surviving to the end."""
        idx = list(range(self.start.dim))
        for s in self.steps:
            idx = [idx[k] for k in s.kept]
        return idx


def choose_complement(rho: Representation, L: LieAlgebra, inv: Subspace | None = None) -> Subspace:
    """Greedy admissible ``U`` inside the invariants.

    Walks the echelon basis of ``V^g`` in pivot order and keeps a vector when
    the center still acts injectively on ``V`` modulo the enlarged ``U``.
    """
    if inv is None:
        inv = invariant_space(rho)
    Z = center(L)
    n = rho.dim
    U = Subspace.zero(n)
    for row in inv.basis:
        cand = U + Subspace.span([row], n)
        if _center_acts_injectively(rho, Z, cand):
            U = cand
    return U


def reduce_step(rho: Representation, L: LieAlgebra) -> ReductionStep:
    inv = invariant_space(rho)
    if center(L).dim == 0:
        raise NoAdmissibleComplement("algebra has trivial center")
    U = choose_complement(rho, L, inv)
    if U.dim == 0:
        raise NoAdmissibleComplement("every invariant vector is needed for faithfulness")
    q = quotient(rho, U)
    chk = verify_representation(L, q.rep)
    if not chk.faithful:
        raise LieError("quotient by invariants lost faithfulness")
    return ReductionStep(rho.dim, inv.dim, U.dim, q.rep, q.kept)


def reduce_once(rho: Representation, L: LieAlgebra) -> Representation:
    return reduce_step(rho, L).rep


def reduce_fully(rho: Representation, L: LieAlgebra) -> ReductionChain:
    chain = ReductionChain(rho)
    cur = rho
    while True:
        try:
            step = reduce_step(cur, L)
        except NoAdmissibleComplement:
            return chain
        chain.steps.append(step)
        cur = step.rep


def reduce_exhaustive(rho: Representation, L: LieAlgebra, max_dim: int = 12) -> int:
    """Smallest dimension reachable when ``U`` ranges over spans of subsets of
    the echelon basis of the invariants at each step.  Debug aid only."""
    if rho.dim > max_dim:
        raise ValueError(f"exhaustive search limited to dimension {max_dim}")
    Z = center(L)
    best = rho.dim
    seen: set = set()

    def rec(r: Representation):
        nonlocal best
        key = tuple(tuple(tuple(row) for row in M) for M in r.matrices)
        if key in seen:
            return
        seen.add(key)
        best = min(best, r.dim)
        inv = invariant_space(r)
        rows = list(inv.basis)
        for k in range(1, len(rows) + 1):
            for sub in combinations(rows, k):
                U = Subspace.span(sub, r.dim)
                if _center_acts_injectively(r, Z, U):
                    rec(quotient(r, U).rep)

    rec(rho)
    return best


def submodule_is_invariant(rho: Representation, W: Subspace) -> bool:
    return all(W.contains([sum(M[r][c] * w[c] for c in range(rho.dim)) for r in range(rho.dim)])
               for M in rho.matrices for w in W.basis)


def invariant_chain_to(rho: Representation, W: Subspace) -> list[int]:
    """Realise ``V/W`` by successive quotients by invariants.

    At each stage the image of ``W`` is a nonzero nilpotent submodule, so it
    meets the invariants of the current quotient; divide that intersection
    out and continue.  Returns the dimensions of the quotients divided out.
    """
    if not submodule_is_invariant(rho, W):
        raise ValueError("W is not a submodule")
    sizes = []
    cur, Wc = rho, W
    while Wc.dim:
        inv = invariant_space(cur)
        U = intersect(inv, Wc)
        if U.dim == 0:
            raise AssertionError("nonzero submodule without invariants")
        q = quotient(cur, U)
        # image of W in the quotient, in the kept coordinates
        imgs = [[U.reduce(w)[i] for i in q.kept] for w in Wc.basis]
        Wc = Subspace.span(imgs, len(q.kept))
        cur = q.rep
        sizes.append(U.dim)
    return sizes
