"""Weight decomposition of representations of nilpotent Lie algebras.

A representation splits as ``rho = delta + nu`` in a suitable basis, with
``delta`` diagonal (one character per generalised weight space) and ``nu``
strictly upper triangular.  Only rational weights are supported.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

import sympy

from .exactlinalg import (
    ZERO,
    Matrix,
    Subspace,
    complement_avoiding,
    identity,
    inverse,
    kernel,
    matmul,
    mat_sub,
    solve,
    transpose,
    zeros,
)
from .lie import LieAlgebra, LieError, Representation, center, derived, rep_kernel


class IrrationalWeights(LieError):
    code = "IrrationalWeights"


class HypothesisFails(LieError):
    code = "HypothesisFails"


def charpoly(A: Matrix) -> list[Fraction]:
    """Coefficients ``[1, c_1, ..., c_d]`` of ``det(tI - A)`` (Faddeev-LeVerrier)."""
    d = len(A)
    coeffs = [Fraction(1)]
    M = zeros(d, d)
    for k in range(1, d + 1):
        AM = matmul(A, M) if k > 1 else [[ZERO] * d for _ in range(d)]
        M = [[AM[i][j] + (coeffs[-1] if i == j else ZERO) for j in range(d)] for i in range(d)]
        AM = matmul(A, M)
        c = -sum(AM[i][i] for i in range(d)) / k
        coeffs.append(c)
    return coeffs


def rational_eigenvalues(A: Matrix) -> dict[Fraction, int]:
    """Eigenvalues with algebraic multiplicity; raises when any is irrational."""
    d = len(A)
    if d == 0:
        return {}
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in charpoly(A)], t, domain="QQ")
    roots = poly.ground_roots()
    if sum(roots.values()) != d:
        raise IrrationalWeights("characteristic polynomial has non-rational roots")
    return {Fraction(int(r.p), int(r.q)): m for r, m in roots.items()}


def _restricted(M: Matrix, B: list[list[Fraction]]) -> Matrix:
    """Matrix of ``M`` on the invariant subspace with basis ``B`` (list of vectors)."""
    cols = transpose(B)
    out = []
    for b in B:
        img = [sum(M[r][c] * b[c] for c in range(len(b))) for r in range(len(M))]
        x = solve(cols, img)
        if x is None:
            raise LieError("subspace is not invariant")
        out.append(x)
    return transpose(out)


def _matpow(A: Matrix, e: int) -> Matrix:
    R = identity(len(A))
    for _ in range(e):
        R = matmul(R, A)
    return R


class WeightSplit(NamedTuple):
    change_of_basis: Matrix
    delta: Representation
    nu: Representation
    weights: list[tuple[Fraction, ...]]
    block_sizes: list[int]
    conjugated: Representation


def weight_decompose(L: LieAlgebra, rho: Representation) -> WeightSplit:
    d = rho.dim
    n = L.dim
    # list of (basis vectors, weight tuple so far)
    blocks: list[tuple[list[list[Fraction]], tuple[Fraction, ...]]] = [
        ([row for row in identity(d)], ())]
    for i in range(n):
        new_blocks = []
        for B, w in blocks:
            A = _restricted(rho.matrices[i], B)
            k = len(B)
            for lam, mult in sorted(rational_eigenvalues(A).items()):
                shifted = [[A[r][c] - (lam if r == c else ZERO) for c in range(k)] for r in range(k)]
                K = kernel(_matpow(shifted, k), k)
                vecs = [[sum(x * B[j][c] for j, x in enumerate(v)) for c in range(d)] for v in K.basis]
                new_blocks.append((vecs, w + (lam,)))
        blocks = new_blocks
    P_cols: list[list[Fraction]] = []
    sizes = []
    for B, w in blocks:
        flag = _flag_basis(rho, B, w)
        P_cols.extend(flag)
        sizes.append(len(flag))
    P = transpose(P_cols)
    Pinv = inverse(P)
    conj = [matmul(Pinv, matmul(M, P)) for M in rho.matrices]
    delta_mats, nu_mats = [], []
    for i in range(n):
        D = zeros(d, d)
        pos = 0
        for (B, w), s in zip(blocks, sizes):
            for a in range(s):
                D[pos + a][pos + a] = w[i]
            pos += s
        delta_mats.append(D)
        nu_mats.append(mat_sub(conj[i], D))
    return WeightSplit(P, Representation.of(L, delta_mats), Representation.of(L, nu_mats),
                       [w for _, w in blocks], sizes, Representation.of(L, conj))


def _flag_basis(rho: Representation, B, w) -> list[list[Fraction]]:
    """Basis of the weight space ``span(B)`` along the flag
    ``K_{t+1} = {v : nu(x) v in K_t for all x}``."""
    k = len(B)
    nus = []
    for i, M in enumerate(rho.matrices):
        A = _restricted(M, B)
        nus.append([[A[r][c] - (w[i] if r == c else ZERO) for c in range(k)] for r in range(k)])
    K = Subspace.zero(k)
    order: list[list[Fraction]] = []
    while K.dim < k:
        ann = kernel(K.rows(), k).basis if K.dim else Subspace.full(k).basis
        rows = [[sum(a[r] * N[r][c] for r in range(k)) for c in range(k)] for N in nus for a in ann]
        rows = [r for r in rows if any(r)]
        nxt = kernel(rows, k) if rows else Subspace.full(k)
        if nxt.dim == K.dim:
            raise LieError("weight space is not triangularisable")
        ext = complement_avoiding(nxt, K)
        order.extend(list(v) for v in ext.basis)
        K = nxt
    return [[sum(v[j] * B[j][c] for j in range(k)) for c in range(len(B[0]))] for v in order]


class TransferResult(NamedTuple):
    rho_faithful: bool
    nu_faithful: bool


def faithful_transfer(L: LieAlgebra, rho: Representation) -> TransferResult:
    """Faithfulness of ``rho`` and of its nilpotent part, which must agree
    when the center lies in the derived algebra."""
    Z, D = center(L), derived(L)
    if not D.contains_space(Z):
        raise HypothesisFails("center is not contained in the derived algebra")
    split = weight_decompose(L, rho)
    rf = rep_kernel(rho.matrices, L.dim).dim == 0
    nf = rep_kernel(split.nu.matrices, L.dim).dim == 0
    assert rf == nf
    return TransferResult(rf, nf)


def matrix_span_class(mats: Sequence[Matrix]) -> int:
    """Nilpotency class of the Lie algebra of matrices spanned by ``mats``
    (assumed closed under commutators).  Zero for the zero algebra."""
    d = len(mats[0]) if mats else 0

    def flat(M):
        return [x for row in M for x in row]

    def unflat(v):
        return [list(v[r * d:(r + 1) * d]) for r in range(d)]

    top = Subspace.span([flat(M) for M in mats], d * d)
    if top.dim == 0:
        return 0
    cur = top
    c = 0
    while cur.dim:
        c += 1
        nxt = Subspace.span([flat(mat_sub(matmul(unflat(a), unflat(b)), matmul(unflat(b), unflat(a))))
                             for a in top.basis for b in cur.basis], d * d)
        if nxt.dim == cur.dim:
            raise LieError("matrix algebra is not nilpotent")
        cur = nxt
    return c
