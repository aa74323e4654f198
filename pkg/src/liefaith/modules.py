"""Faithful modules as finite quotients of the enveloping algebra.

The input is a Lie algebra ``g`` written as ``d x| n`` (an ideal ``n`` and a
complementary subalgebra acting on it by derivations), an adapted filtration
of ``n`` and an abelian, derivation-stable ideal ``J`` of ``n`` squeezed
between two consecutive filtration terms.  The module is ``U(n) / Z_J`` where
``Z_J`` is spanned by the standard monomials of length at least two that
either involve ``J`` or have order at least ``C``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import pbw
from .exactlinalg import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    identity,
    intersect,
    transpose,
    unit_vector,
    zeros,
)
from .lie import (
    LieAlgebra,
    LieError,
    Representation,
    SemidirectData,
    adapted_basis,
    center,
    change_basis,
    is_ideal,
    lower_central_series,
    pull_back,
    restrict,
    semidirect_decompose,
    split_abelian_factor,
    verify_representation,
)
from .pbw import Monomial, PBWContext


class NotIdeal(LieError):
    code = "NotIdeal"


class NotAbelian(LieError):
    code = "NotAbelian"


class NotDInvariant(LieError):
    code = "NotDInvariant"


class NotSqueezed(LieError):
    code = "NotSqueezed"


class DerivationsNotOrderRaising(LieError):
    code = "DerivationsNotOrderRaising"


class DerivationsNotOrderPreserving(LieError):
    code = "DerivationsNotOrderPreserving"


class FaithfulnessCheckFailed(LieError):
    code = "FaithfulnessCheckFailed"


class NotTwoStep(LieError):
    code = "NotTwoStep"


class JNotAbelian(LieError):
    code = "JNotAbelian"


class NoCompatibleIdealFound(LieError):
    code = "NoCompatibleIdealFound"


@dataclass(frozen=True, eq=False)
class CompatibleIdeal:
    """``J = span(x_m, ..., x_n)`` in the context basis, sitting between
    ``n^[t+1]`` and ``n^[t]``."""

    context: PBWContext
    m: int
    t: int

    @property
    def dim(self) -> int:
        return self.context.n - self.m

    def indices(self) -> range:
        return range(self.m, self.context.n)


@dataclass(frozen=True, eq=False)
class QuotientModule:
    basis: tuple[Monomial, ...]
    action: Representation
    context: PBWContext
    provenance: str
    ideal: CompatibleIdeal | None = None
    extra_names: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return self.action.dim

    def basis_names(self) -> list[str]:
        return [self.context.name(a) for a in self.basis] + list(self.extra_names)


# ---------------------------------------------------------------------------
# compatible ideals

def check_compatible(ctx: PBWContext, m: int) -> CompatibleIdeal:
    n = ctx.n
    if not 0 <= m < n:
        raise IndexError(f"suffix start {m} out of range for dimension {n}")
    L = ctx.algebra
    J = range(m, n)
    Jspace = Subspace.coordinate(J, n)
    if not is_ideal(L, Jspace):
        raise NotIdeal(f"span(x_{m + 1}..x_{n}) is not an ideal")
    for i in J:
        for j in J:
            if i < j and L.basis_bracket(i, j):
                raise NotAbelian(f"J is not abelian: [{ctx.names[i]}, {ctx.names[j]}] != 0")
    for D in ctx.derivations:
        for j in J:
            if any(D[r][j] for r in range(m)):
                raise NotDInvariant(f"a derivation moves {ctx.names[j]} out of J")
    filt = ctx.filtration
    t = None
    for s in range(ctx.C, 0, -1):
        if Jspace.contains_space(filt.term(s + 1)) and filt.term(s).contains_space(Jspace):
            t = s
            break
    if t is None:
        raise NotSqueezed("J does not lie between two consecutive filtration terms")
    return CompatibleIdeal(ctx, m, t)


def _candidate_is_compatible(L: LieAlgebra, ders, idx: set[int]) -> bool:
    n = L.dim
    S = Subspace.coordinate(idx, n)
    if not is_ideal(L, S):
        return False
    if any(L.basis_bracket(i, j) for i in idx for j in idx if i < j):
        return False
    return all(not D[r][j] for D in ders for j in idx for r in range(n) if r not in idx)


def auto_select_ideal(ctx: PBWContext) -> CompatibleIdeal:
    """Pick a compatible ideal deterministically.

    For every level ``t`` start from ``n^[t+1]`` and greedily append basis
    vectors of the block between ``n^[t+1]`` and ``n^[t]`` (in basis order)
    while the span stays an abelian, derivation-stable ideal.  Among the
    candidates the largest ``J`` wins; ties go to the smaller level.  The
    context is rebuilt when ``J`` needs a different ordering inside its block.
    """
    L = ctx.algebra
    n = ctx.n
    best = None
    for t in range(1, ctx.C + 1):
        base = set(ctx.filtration.term(t + 1).pivots)
        block = [i for i in range(n) if ctx.orders[i] == t]
        idx = set(base)
        for i in block:
            if _candidate_is_compatible(L, ctx.derivations, idx | {i}):
                idx.add(i)
        if not idx or not _candidate_is_compatible(L, ctx.derivations, idx):
            continue
        key = (-len(idx), t)
        if best is None or key < best[0]:
            best = (key, frozenset(idx))
    if best is None:
        raise NoCompatibleIdealFound("no compatible ideal among the greedy candidates")
    idx = best[1]
    if idx == set(range(n - len(idx), n)):
        return check_compatible(ctx, n - len(idx))
    new = _realign(ctx, idx)
    return check_compatible(new, n - len(idx))


def _realign(ctx: PBWContext, idx: Iterable[int]) -> PBWContext:
    """Rebuild ``ctx`` so that the context indices ``idx`` form a suffix.

    The new context keeps the original input basis (``perm`` composes)."""
    n = ctx.n
    inv = {c: g for c, g in enumerate(ctx.perm)}
    # reconstruct the input-basis algebra and derivations
    order_of_input = sorted(range(n), key=lambda c: inv[c])
    orig_alg = restrict(ctx.algebra, [unit_vector(n, c) for c in order_of_input])
    ders = [[[D[order_of_input[r]][order_of_input[c]] for c in range(n)] for r in range(n)]
            for D in ctx.derivations]
    terms = [Subspace.coordinate([inv[c] for c in S.pivots], n) for S in ctx.filtration.terms]
    names = [ctx.names[c] for c in order_of_input]
    return pbw.make_context(orig_alg, terms, ders, ctx.T, j_indices=[inv[c] for c in idx], names=names)


# ---------------------------------------------------------------------------
# quotient construction

def in_ZJ(ctx: PBWContext, m: int, a: Monomial) -> bool:
    """Monomial membership in ``Z_J`` for ``J = span(x_m..)``."""
    if sum(a) < 2:
        return False
    return any(a[m:]) or ctx.monomial_order(a) >= ctx.C


def quotient_basis(ctx: PBWContext, m: int) -> list[Monomial]:
    return pbw.enumerate_monomials(ctx, lambda o, l, a: not in_ZJ(ctx, m, a), ctx.C)


def _action_matrices(ctx: PBWContext, basis: Sequence[Monomial], keep) -> tuple[list[Matrix], list[Matrix]]:
    """Matrices of left multiplication by each ``x_i`` and of each derivation
    on the span of ``basis``, discarding monomials rejected by ``keep``."""
    pos = {a: j for j, a in enumerate(basis)}
    d = len(basis)

    def to_matrix(images):
        M = zeros(d, d)
        for j, W in enumerate(images):
            for a, c in W.items():
                if a in pos:
                    M[pos[a]][j] = c
                elif keep(a):
                    raise FaithfulnessCheckFailed(f"image leaves the quotient basis: {ctx.name(a)}")
        return M

    lefts = [to_matrix([pbw.left_mul(ctx, i, {a: ONE}) for a in basis]) for i in range(ctx.n)]
    ders = [to_matrix([pbw.derive(ctx, D, {a: ONE}) for a in basis]) for D in ctx.derivations]
    return lefts, ders


def _assemble(sd: SemidirectData | None, ctx: PBWContext, lefts, ders) -> list[Matrix]:
    """Matrices indexed by the basis of the full algebra."""
    if sd is None:
        inv = {g: c for c, g in enumerate(ctx.perm)}
        return [lefts[inv[g]] for g in range(ctx.n)]
    mats: list[Matrix | None] = [None] * sd.algebra.dim
    inv = {g: c for c, g in enumerate(ctx.perm)}
    for p, g in enumerate(sd.inner_indices):
        mats[g] = lefts[inv[p]]
    for a, g in enumerate(sd.outer_indices):
        mats[g] = ders[a]
    return mats


def build_quotient(ctx: PBWContext, J: CompatibleIdeal, sd: SemidirectData | None = None,
                   algebra: LieAlgebra | None = None, oracle: bool = False) -> QuotientModule:
    """Faithful module ``U(n)/Z_J`` for ``g = d x| n``.

    ``sd`` carries the decomposition (``None`` when ``g = n`` and ``d = 0``).
    With ``oracle=True`` the quotient is formed by genuine subspace reduction
    modulo a directly computed ``Z_J`` instead of monomial filtering.
    """
    if not ctx.order_raising:
        raise DerivationsNotOrderRaising("some derivation does not raise order by one")
    if ctx.T < ctx.C:
        raise ValueError("context truncation must be at least the filtration length")
    if J.context is not ctx:
        ctx = J.context
    m = J.m
    basis = quotient_basis(ctx, m)
    if oracle:
        lefts, ders = _oracle_actions(ctx, m, basis)
    else:
        lefts, ders = _action_matrices(ctx, basis, lambda a: not in_ZJ(ctx, m, a))
    L = algebra if algebra is not None else (sd.algebra if sd is not None else ctx.algebra)
    mats = _assemble(sd, ctx, lefts, ders)
    rep = Representation.of(L, mats)
    chk = verify_representation(L, rep)
    if not chk.faithful:
        raise FaithfulnessCheckFailed(f"module check failed: is_module={chk.is_module}, "
                                      f"kernel dim={chk.kernel.dim}")
    return QuotientModule(tuple(basis), rep, ctx, "quotient U(n)/Z_J", J)


def z_j_subspace(ctx: PBWContext, m: int) -> tuple[list[Monomial], Subspace]:
    """``Z_J`` computed as ``(<<J>> cap L_2) + (V_C cap L_2)`` inside the span
    of all monomials of order at most ``T``, without using the monomial
    description.  Returns the monomial list indexing coordinates and ``Z_J``."""
    allm = pbw.enumerate_monomials(ctx, None, ctx.T)
    pos = {a: j for j, a in enumerate(allm)}
    N = len(allm)

    def vec(W):
        v = [ZERO] * N
        for a, c in W.items():
            v[pos[a]] += c
        return v

    right_multiples = []
    for a in allm:
        word = [i for i, e in enumerate(a) for _ in range(e)]
        for k in range(m, ctx.n):
            W = pbw.straighten(ctx, word + [k])
            if W:
                right_multiples.append(vec(W))
    JJ = Subspace.span(right_multiples, N)
    L2 = Subspace.coordinate([pos[a] for a in allm if sum(a) >= 2], N)
    VC_L2 = Subspace.coordinate([pos[a] for a in allm if sum(a) >= 2 and ctx.monomial_order(a) >= ctx.C], N)
    return allm, intersect(JJ, L2) + VC_L2


def _oracle_actions(ctx: PBWContext, m: int, basis):
    allm, Z = z_j_subspace(ctx, m)
    pos = {a: j for j, a in enumerate(allm)}
    N = len(allm)
    bpos = {a: j for j, a in enumerate(basis)}
    d = len(basis)
    non_pivot = [j for j in range(N) if j not in set(Z.pivots)]
    if sorted(pos[a] for a in basis) != non_pivot:
        raise FaithfulnessCheckFailed("Z_J complement differs from the monomial description")

    def to_matrix(images):
        M = zeros(d, d)
        for j, W in enumerate(images):
            v = [ZERO] * N
            for a, c in W.items():
                v[pos[a]] += c
            r = Z.reduce(v)
            for a in basis:
                M[bpos[a]][j] = r[pos[a]]
        return M

    lefts = [to_matrix([pbw.left_mul(ctx, i, {a: ONE}) for a in basis]) for i in range(ctx.n)]
    ders = [to_matrix([pbw.derive(ctx, D, {a: ONE}) for a in basis]) for D in ctx.derivations]
    return lefts, ders


def build_order_truncation(ctx: PBWContext, sd: SemidirectData | None = None,
                           algebra: LieAlgebra | None = None) -> QuotientModule:
    """Faithful module ``U(n)/V_{C+1}``: all monomials of order at most ``C``."""
    if not ctx.order_preserving:
        raise DerivationsNotOrderPreserving("some derivation lowers order")
    C = ctx.C
    basis = pbw.enumerate_monomials(ctx, None, C)
    lefts, ders = _action_matrices(ctx, basis, lambda a: ctx.monomial_order(a) <= C)
    L = algebra if algebra is not None else (sd.algebra if sd is not None else ctx.algebra)
    rep = Representation.of(L, _assemble(sd, ctx, lefts, ders))
    chk = verify_representation(L, rep)
    if not chk.faithful:
        raise FaithfulnessCheckFailed("order truncation is not faithful")
    n = ctx.n
    bound = truncation_bound_holds(len(basis), n)
    if not bound:
        raise FaithfulnessCheckFailed(f"dimension {len(basis)} exceeds (3/sqrt(n)) 2^n")
    return QuotientModule(tuple(basis), rep, ctx, "order truncation U(n)/V_{C+1}")


def truncation_bound_holds(d: int, n: int) -> bool:
    """``d <= 3 * 2^n / sqrt(n)`` decided exactly by squaring."""
    if n == 0:
        return d <= 1
    return d * d * n <= 9 * 4 ** n


# ---------------------------------------------------------------------------
# orchestration

def induced_filtration(L: LieAlgebra, inner: Sequence[int]) -> list[Subspace]:
    """``n^[1] = n`` and ``n^[i] = L^i cap n`` in the coordinates of ``n``."""
    series, _ = lower_central_series(L)
    k = len(inner)
    N = Subspace.coordinate(inner, L.dim)
    terms = [Subspace.full(k)]
    for S in series[1:]:
        I = intersect(S, N)
        rows = [[row[g] for g in inner] for row in I.basis]
        T = Subspace.span(rows, k)
        if T.dim == terms[-1].dim:
            if T.dim == 0:
                break
            raise pbw.NotAdapted("induced filtration is not strictly descending")
        terms.append(T)
    if terms[-1].dim:
        terms.append(Subspace.zero(k))
    return terms


def build_module(L: LieAlgebra, inner: Sequence[int] | None = None,
                 filtration: str | Sequence[Subspace] = "lcs",
                 ideal: str | Iterable[int] = "auto", truncate: int | None = None,
                 method: str = "quotient", oracle: bool = False) -> QuotientModule:
    """One-call construction used by the command line.

    ``inner`` lists the basis indices of the ideal ``n`` (``None``: ``n = L``
    and no derivations).  ``filtration`` is ``"lcs"`` (inherited from the
    lower central series of ``L``), ``"inner-lcs"`` (that of ``n``) or a list
    of subspaces of ``n``.  ``ideal`` is ``"auto"`` or the basis indices of
    ``L`` spanning ``J``.
    """
    if inner is None:
        LL, P = adapted_basis(L)
        if P != identity(L.dim):
            if ideal != "auto":
                raise pbw.BasisAlignmentImpossible(
                    "lower central series is not spanned by basis vectors; use --ideal auto")
            mod = build_module(LL, None, filtration, "auto" if ideal == "auto" else ideal,
                               truncate, method, oracle)
            rep = pull_back(mod.action, L, P)
            return QuotientModule(mod.basis, rep, mod.context, mod.provenance + " (adapted basis)", mod.ideal)
        inner_idx = list(range(L.dim))
        sd = None
        n_alg, ders = L, []
    else:
        sd = semidirect_decompose(L, inner)
        inner_idx = list(sd.inner_indices)
        n_alg, ders = sd.inner, list(sd.derivations)
    if isinstance(filtration, str):
        if filtration == "lcs":
            terms = induced_filtration(L, inner_idx)
        elif filtration == "inner-lcs":
            terms = lower_central_series(n_alg)[0]
        else:
            raise ValueError(f"unknown filtration {filtration!r}")
    else:
        terms = list(filtration)
    names = [L.label(g).upper() if L.labels else f"X{g + 1}" for g in inner_idx]
    pos = {g: p for p, g in enumerate(inner_idx)}
    j_inner = [] if isinstance(ideal, str) else [pos[g] for g in ideal]
    ctx = pbw.make_context(n_alg, terms, ders, truncate, j_indices=j_inner, names=names)
    if method == "truncation":
        return build_order_truncation(ctx, sd, L)
    if isinstance(ideal, str):
        if ideal != "auto":
            raise ValueError(f"unknown ideal choice {ideal!r}")
        J = auto_select_ideal(ctx)
    else:
        m = ctx.n - len(j_inner)
        if set(ctx.perm[m:]) != set(j_inner):
            raise NotSqueezed("J cannot be placed as a basis suffix")
        J = check_compatible(ctx, m)
    return build_quotient(J.context, J, sd, L, oracle=oracle)


def _abelian_rep_mats(k: int) -> list[Matrix]:
    out = []
    for i in range(k):
        M = zeros(k, k)
        M[i][i] = ONE
        out.append(M)
    return out


def two_step_module(L: LieAlgebra) -> QuotientModule:
    """Faithful module of dimension ``dim L`` for a two-step nilpotent ``L``.

    The abelian direct factor gets a diagonal module; the rest is handled by
    a codimension-one ideal containing the derived algebra with ``J`` the
    center and the two-term filtration ``n > Z > 0``.
    """
    try:
        c = lower_central_series(L)[1]
    except LieError as e:
        raise NotTwoStep(str(e)) from e
    if c != 2:
        raise NotTwoStep(f"nilpotency class is {c}, not 2")
    split = split_abelian_factor(L)
    M = split.inner
    MM, P = adapted_basis(M)
    Z = center(MM)
    # n = every basis vector except the first one; [MM, MM] = Z sits in n
    inner = list(range(1, MM.dim))
    sd = semidirect_decompose(MM, inner)
    k = MM.dim - 1
    Zn = Subspace.span([[row[g] for g in inner] for row in Z.basis], k)
    ctx = pbw.make_context(sd.inner, [Subspace.full(k), Zn], sd.derivations,
                           j_indices=Zn.pivots)
    J = check_compatible(ctx, ctx.n - Zn.dim)
    mod = build_quotient(ctx, J, sd, MM)
    rep_M = pull_back(mod.action, M, P)
    if split.ell == 0:
        full = transpose(split.inner_basis)
        rep = pull_back(Representation.of(change_basis(L, full), rep_M.matrices), L, full)
        return QuotientModule(mod.basis, rep, mod.context, "two-step construction", J)
    # L = M + Q^ell in the basis (inner_basis, abelian_basis)
    cols = transpose(split.inner_basis + split.abelian_basis)
    Lnew = change_basis(L, cols)
    d1, ell = rep_M.dim, split.ell
    mats = []
    ab = _abelian_rep_mats(ell)
    for i in range(Lnew.dim):
        A = rep_M.matrices[i] if i < M.dim else zeros(d1, d1)
        B = ab[i - M.dim] if i >= M.dim else zeros(ell, ell)
        Mx = zeros(d1 + ell, d1 + ell)
        for a in range(d1):
            Mx[a][:d1] = A[a]
        for a in range(ell):
            Mx[d1 + a][d1:] = B[a]
        mats.append(Mx)
    rep = pull_back(Representation.of(Lnew, mats), L, cols)
    return QuotientModule(mod.basis, rep, mod.context, "two-step construction + abelian factor", J,
                          tuple(f"e{a + 1}" for a in range(ell)))


def filiform_module(f: LieAlgebra, beta: int) -> QuotientModule:
    """Module of dimension ``f(n, beta)`` for a filiform algebra in an adapted
    basis (``[x_1, x_i] = x_{i+1}`` up to higher terms), using
    ``n = span(x_2..x_n)``, ``d = <ad x_1>``, ``J`` the last ``beta`` basis
    vectors and the filtration ``n^[1] = n``, ``n^[i] = f^i``."""
    n = f.dim
    if not 1 <= beta <= n - 1:
        raise ValueError(f"beta must lie in 1..{n - 1}")
    J = list(range(n - beta, n))
    for i in J:
        for j in J:
            if i < j and f.basis_bracket(i, j):
                raise JNotAbelian(f"[x{i + 1}, x{j + 1}] != 0")
    return build_module(f, list(range(1, n)), "lcs", J)


__all__ = [
    "CompatibleIdeal", "QuotientModule", "check_compatible", "auto_select_ideal", "build_quotient",
    "build_order_truncation", "two_step_module", "filiform_module", "build_module", "in_ZJ",
    "quotient_basis", "z_j_subspace", "induced_filtration", "truncation_bound_holds",
]
