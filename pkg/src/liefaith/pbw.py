"""Truncated universal enveloping algebra of a nilpotent Lie algebra.

A :class:`PBWContext` fixes an ordered basis adapted to a filtration, the
order value of every basis vector and a truncation threshold ``T``.
Elements are sparse dicts ``{exponent tuple: Fraction}``; every monomial
of order above ``T`` is dropped as soon as it appears.  Dropping is sound
for left multiplication because order is super-additive, and for a
derivation as long as it does not lower order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .exactlinalg import ZERO, Matrix, Subspace, to_fraction, unit_vector
from .lie import LieAlgebra, LieError, bracket_spaces, lower_central_series, restrict

Monomial = tuple[int, ...]
UEAElement = dict[Monomial, Fraction]


class NotAdapted(LieError):
    code = "NotAdapted"


class BasisAlignmentImpossible(LieError):
    code = "BasisAlignmentImpossible"


@dataclass(frozen=True, eq=False)
class AdaptedFiltration:
    """Terms ``n^[1] = n > ... > n^[C+1] = 0`` as subspaces of the algebra."""

    algebra: LieAlgebra
    terms: tuple[Subspace, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term(self, t: int) -> Subspace:
        """``n^[t]`` with the convention ``n^[t] = 0`` for ``t > C``."""
        if t <= 0:
            return self.terms[0]
        if t > self.length:
            return self.terms[-1]
        return self.terms[t - 1]


def make_filtration(algebra: LieAlgebra, terms: Sequence[Subspace]) -> AdaptedFiltration:
    """Validate and normalise; a trailing zero term is appended when missing."""
    n = algebra.dim
    terms = list(terms)
    if not terms or terms[0].dim != n:
        raise NotAdapted("first filtration term must be the whole algebra")
    if terms[-1].dim:
        terms.append(Subspace.zero(n))
    for a, b in zip(terms, terms[1:]):
        if not a.contains_space(b) or a.dim == b.dim:
            raise NotAdapted("filtration is not strictly descending")
    filt = AdaptedFiltration(algebra, tuple(terms))
    C = filt.length
    for i in range(1, C + 1):
        for j in range(i, C + 1):
            br = bracket_spaces(algebra, filt.term(i), filt.term(j))
            if not filt.term(i + j).contains_space(br):
                raise NotAdapted(f"[n^[{i}], n^[{j}]] is not contained in n^[{i + j}]")
    return filt


def lcs_filtration(algebra: LieAlgebra) -> AdaptedFiltration:
    series, _ = lower_central_series(algebra)
    return make_filtration(algebra, series)


@dataclass(frozen=True, eq=False)
class PBWContext:
    """Everything needed to compute in ``U(n)`` truncated above order ``T``.

    ``algebra`` and ``derivations`` are expressed in the context basis, which
    is the input basis permuted by ``perm`` (context index -> input index).
    """

    algebra: LieAlgebra
    filtration: AdaptedFiltration
    perm: tuple[int, ...]
    orders: tuple[int, ...]
    derivations: tuple[Matrix, ...]
    T: int
    names: tuple[str, ...]
    order_preserving: bool
    order_raising: bool
    _mul_cache: dict = field(default_factory=dict, repr=False)
    _der_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.algebra.dim

    @property
    def C(self) -> int:
        return self.filtration.length

    def monomial_order(self, a: Monomial) -> int:
        return sum(e * o for e, o in zip(a, self.orders))

    def vector_order(self, v: Sequence[Fraction]) -> float:
        return min((self.orders[i] for i, c in enumerate(v) if c), default=math.inf)

    def one(self) -> UEAElement:
        return {(0,) * self.n: Fraction(1)}

    def generator(self, i: int) -> UEAElement:
        a = [0] * self.n
        a[i] = 1
        return {tuple(a): Fraction(1)}

    def name(self, a: Monomial) -> str:
        parts = []
        for i, e in enumerate(a):
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"


def make_context(algebra: LieAlgebra, filtration: AdaptedFiltration | Sequence[Subspace] | None = None,
                 derivations: Sequence[Matrix] = (), T: int | None = None,
                 j_indices: Iterable[int] = (), names: Sequence[str] | None = None) -> PBWContext:
    """Order the basis by filtration depth and record order values.

    Every filtration term must be spanned by basis vectors.  Inside one
    filtration block the vectors listed in ``j_indices`` go last, so an
    ideal squeezed between two consecutive terms becomes a basis suffix.
    ``T`` defaults to the filtration length.
    """
    if filtration is None:
        filtration = lcs_filtration(algebra)
    elif not isinstance(filtration, AdaptedFiltration):
        filtration = make_filtration(algebra, filtration)
    n = algebra.dim
    for t, S in enumerate(filtration.terms, start=1):
        if not S.is_coordinate():
            raise BasisAlignmentImpossible(
                f"filtration term {t} is not spanned by basis vectors; change basis first")
    orders = []
    for i in range(n):
        e = unit_vector(n, i)
        orders.append(max(t for t, S in enumerate(filtration.terms, start=1) if S.contains(e)))
    jset = set(j_indices)
    perm = tuple(sorted(range(n), key=lambda i: (orders[i], i in jset, i)))
    pos = {g: c for c, g in enumerate(perm)}
    alg = restrict(algebra, [unit_vector(n, g) for g in perm]) if n else algebra
    ders = []
    for D in derivations:
        D = [[to_fraction(a) for a in row] for row in D]
        ders.append([[D[perm[r]][perm[c]] for c in range(n)] for r in range(n)])
    terms = tuple(Subspace.coordinate([pos[g] for g in S.pivots], n) for S in filtration.terms)
    cfilt = AdaptedFiltration(alg, terms)
    corders = tuple(orders[g] for g in perm)
    preserving = raising = True
    for D in ders:
        for c in range(n):
            col = [D[r][c] for r in range(n)]
            o = min((corders[r] for r in range(n) if col[r]), default=math.inf)
            if o < corders[c]:
                preserving = False
            if o < corders[c] + 1:
                raising = False
    if names is None:
        names = [f"X{g + 1}" for g in range(n)]
    cnames = tuple(names[g] for g in perm)
    C = cfilt.length
    return PBWContext(alg, cfilt, perm, corders, tuple(ders), C if T is None else T,
                      cnames, preserving, raising)


# ---------------------------------------------------------------------------
# arithmetic

def _add_into(acc: UEAElement, other: UEAElement, c: Fraction = Fraction(1)):
    for m, v in other.items():
        nv = acc.get(m, ZERO) + c * v
        if nv:
            acc[m] = nv
        else:
            acc.pop(m, None)


def mul_basis(ctx: PBWContext, i: int, a: Monomial) -> UEAElement:
    """Normal form of ``X_i * X^a``."""
    key = (i, a)
    cache = ctx._mul_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    if ctx.monomial_order(a) + ctx.orders[i] > ctx.T:
        res: UEAElement = {}
    else:
        k = next((t for t, e in enumerate(a) if e), None)
        if k is None or i <= k:
            b = list(a)
            b[i] += 1
            res = {tuple(b): Fraction(1)}
        else:
            # X_i X_k R = X_k (X_i R) + [x_i, x_k] R
            rest = list(a)
            rest[k] -= 1
            rest = tuple(rest)
            res = {}
            for m, c in mul_basis(ctx, i, rest).items():
                _add_into(res, mul_basis(ctx, k, m), c)
            for l, c in ctx.algebra.basis_bracket(i, k):
                _add_into(res, mul_basis(ctx, l, rest), c)
    cache[key] = res
    return res


def left_mul(ctx: PBWContext, x: Sequence[Fraction] | int, W: UEAElement) -> UEAElement:
    """``x * W`` for a vector (or basis index) ``x`` of ``n``."""
    if isinstance(x, int):
        x = unit_vector(ctx.n, x)
    out: UEAElement = {}
    for i, xi in enumerate(x):
        if not xi:
            continue
        for m, c in W.items():
            _add_into(out, mul_basis(ctx, i, m), xi * c)
    return out


def mul(ctx: PBWContext, W: UEAElement, Y: UEAElement) -> UEAElement:
    """Product ``W * Y`` in the truncated algebra."""
    out: UEAElement = {}
    for m, c in W.items():
        word = [i for i, e in enumerate(m) for _ in range(e)]
        _add_into(out, straighten(ctx, word, Y=Y), c)
    return out


def straighten(ctx: PBWContext, word: Sequence[int], coeff=1, Y: UEAElement | None = None) -> UEAElement:
    """Normal form of ``coeff * X_{w_1} ... X_{w_l}`` (times ``Y`` on the right)."""
    W = ctx.one() if Y is None else dict(Y)
    for i in reversed(word):
        W = left_mul(ctx, i, W)
    c = to_fraction(coeff)
    return {m: c * v for m, v in W.items()} if c != 1 else W


def _der_key(D: Matrix):
    return tuple(tuple(r) for r in D)


def derive_monomial(ctx: PBWContext, D: Matrix, a: Monomial, key=None) -> UEAElement:
    if key is None:
        key = _der_key(D)
    ck = (key, a)
    hit = ctx._der_cache.get(ck)
    if hit is not None:
        return hit
    k = next((t for t, e in enumerate(a) if e), None)
    res: UEAElement = {}
    if k is not None:
        rest = list(a)
        rest[k] -= 1
        rest = tuple(rest)
        # D(X_k R) = D(x_k) R + X_k D(R)
        for l in range(ctx.n):
            c = D[l][k]
            if c:
                _add_into(res, mul_basis(ctx, l, rest), c)
        for m, c in derive_monomial(ctx, D, rest, key).items():
            _add_into(res, mul_basis(ctx, k, m), c)
    ctx._der_cache[ck] = res
    return res


def derive(ctx: PBWContext, D: Matrix | int, W: UEAElement) -> UEAElement:
    """Extend a derivation of ``n`` to ``U(n)`` by the Leibniz rule."""
    if isinstance(D, int):
        D = ctx.derivations[D]
    key = _der_key(D)
    out: UEAElement = {}
    for m, c in W.items():
        _add_into(out, derive_monomial(ctx, D, m, key), c)
    return out


def order(ctx: PBWContext, W: UEAElement) -> float:
    return min((ctx.monomial_order(m) for m in W), default=math.inf)


def length(W: UEAElement) -> float:
    return min((sum(m) for m in W), default=math.inf)


def truncate(ctx: PBWContext, W: UEAElement, T: int) -> UEAElement:
    return {m: c for m, c in W.items() if ctx.monomial_order(m) <= T}


# ---------------------------------------------------------------------------
# enumeration

def iter_monomials(ctx: PBWContext, max_order: int) -> Iterator[Monomial]:
    n = ctx.n
    orders = ctx.orders
    a = [0] * n

    def rec(i: int, budget: int):
        if i == n:
            yield tuple(a)
            return
        e = 0
        while e * orders[i] <= budget:
            a[i] = e
            yield from rec(i + 1, budget - e * orders[i])
            e += 1
        a[i] = 0

    yield from rec(0, max_order)


def monomial_sort_key(ctx: PBWContext, a: Monomial):
    """Graded by order value, then lexicographic in the exponent vector."""
    return (ctx.monomial_order(a), a)


def enumerate_monomials(ctx: PBWContext,
                        predicate: Callable[[int, int, Monomial], bool] | None = None,
                        max_order: int | None = None) -> list[Monomial]:
    """Standard monomials of order at most ``max_order`` (default ``T``)
    accepted by ``predicate(order, length, exponents)``."""
    top = ctx.T if max_order is None else min(max_order, ctx.T)
    out = []
    for a in iter_monomials(ctx, top):
        if predicate is None or predicate(ctx.monomial_order(a), sum(a), a):
            out.append(a)
    out.sort(key=lambda a: monomial_sort_key(ctx, a))
    return out
