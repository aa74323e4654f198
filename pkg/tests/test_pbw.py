import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liefaith import pbw
from liefaith.exactlinalg import Subspace, unit_vector
from liefaith.lie import LieAlgebra, adapted_basis, heisenberg, semidirect_decompose, standard_filiform
from liefaith.modules import induced_filtration
from liefaith.samples import random_nilpotent


def example_context():
    """n = <x1, x3, x4> inside the four-dimensional filiform algebra."""
    g = standard_filiform(4)
    sd = semidirect_decompose(g, [0, 2, 3])
    terms = induced_filtration(g, [0, 2, 3])
    return pbw.make_context(sd.inner, terms, sd.derivations, names=["X1", "X3", "X4"])


def random_context(seed, extra_T=0):
    rng = random.Random(seed)
    L, _ = random_nilpotent(rng, 5, min_dim=2)
    LL, _ = adapted_basis(L)
    ctx = pbw.make_context(LL)
    if extra_T:
        ctx = pbw.make_context(LL, T=ctx.C + extra_T)
    return ctx, rng


def random_element(ctx, rng, terms=3):
    mons = list(pbw.iter_monomials(ctx, ctx.T))
    W = {}
    for _ in range(rng.randint(1, terms)):
        a = rng.choice(mons)
        c = F(rng.randint(-3, 3), rng.randint(1, 2))
        if c:
            W[a] = W.get(a, F(0)) + c
    return {a: c for a, c in W.items() if c}


def sub(W, Y):
    out = dict(W)
    pbw._add_into(out, Y, F(-1))
    return out


def add(W, Y):
    out = dict(W)
    pbw._add_into(out, Y)
    return out


def test_example_enumeration_order_three():
    ctx = example_context()
    assert ctx.orders == (1, 2, 3)
    mons = pbw.enumerate_monomials(ctx, None, 3)
    names = {ctx.name(a) for a in mons}
    assert names == {"1", "X1", "X3", "X1^2", "X1^3", "X1*X3", "X4"}
    assert [ctx.name(a) for a in pbw.enumerate_monomials(ctx, None, 0)] == ["1"]


def test_enumeration_is_graded_then_lex():
    ctx = example_context()
    mons = pbw.enumerate_monomials(ctx, None, 3)
    keys = [pbw.monomial_sort_key(ctx, a) for a in mons]
    assert keys == sorted(keys)


def test_straighten_heisenberg():
    # X2 X1 = X1 X2 - X3 in h3
    ctx = pbw.make_context(heisenberg(1), T=4)
    W = pbw.straighten(ctx, [1, 0])
    assert W == {(1, 1, 0): F(1), (0, 0, 1): F(-1)}


def test_truncation_drops_high_order():
    ctx = pbw.make_context(heisenberg(1))  # T = C = 2
    assert pbw.straighten(ctx, [0, 0, 0]) == {}
    assert pbw.straighten(ctx, [0, 1]) == {(1, 1, 0): F(1)}


def test_non_adapted_filtration_rejected():
    L = standard_filiform(4)
    # x2 placed in the second term is not compatible with [x1, x2] = x3 in the third
    with pytest.raises(pbw.NotAdapted):
        pbw.make_filtration(L, [Subspace.full(4), Subspace.coordinate([1, 2, 3], 4),
                                Subspace.coordinate([3], 4)])


def test_misaligned_filtration_rejected():
    L = LieAlgebra(2, {})
    with pytest.raises(pbw.BasisAlignmentImpossible):
        pbw.make_context(L, [Subspace.full(2), Subspace.span([[1, 1]], 2)])


@given(st.integers(0, 10_000))
def test_lie_relation_on_left_multiplication(seed):
    ctx, rng = random_context(seed)
    W = random_element(ctx, rng)
    i, j = rng.randrange(ctx.n), rng.randrange(ctx.n)
    lhs = sub(pbw.left_mul(ctx, i, pbw.left_mul(ctx, j, W)), pbw.left_mul(ctx, j, pbw.left_mul(ctx, i, W)))
    br = ctx.algebra.bracket(unit_vector(ctx.n, i), unit_vector(ctx.n, j))
    assert lhs == pbw.left_mul(ctx, br, W)


@given(st.integers(0, 10_000))
def test_associativity(seed):
    ctx, rng = random_context(seed, extra_T=1)
    A, B, C = (random_element(ctx, rng, 2) for _ in range(3))
    assert pbw.mul(ctx, pbw.mul(ctx, A, B), C) == pbw.mul(ctx, A, pbw.mul(ctx, B, C))


@given(st.integers(0, 10_000))
def test_leibniz_for_inner_derivations(seed):
    ctx, rng = random_context(seed)
    y = [F(rng.randint(-2, 2)) for _ in range(ctx.n)]
    D = ctx.algebra.ad(y)
    W = random_element(ctx, rng)
    i = rng.randrange(ctx.n)
    lhs = pbw.derive(ctx, D, pbw.left_mul(ctx, i, W))
    Dx = [D[r][i] for r in range(ctx.n)]
    rhs = add(pbw.left_mul(ctx, Dx, W), pbw.left_mul(ctx, i, pbw.derive(ctx, D, W)))
    assert lhs == rhs


@given(st.integers(0, 10_000))
def test_truncation_consistency(seed):
    ctx, rng = random_context(seed, extra_T=2)
    low = pbw.make_context(ctx.algebra, ctx.filtration, T=ctx.T - 2)
    word = [rng.randrange(ctx.n) for _ in range(rng.randint(1, 4))]
    big = pbw.straighten(ctx, word)
    assert pbw.truncate(ctx, big, low.T) == pbw.straighten(low, word)


@given(st.integers(0, 10_000))
def test_order_and_length_inequalities(seed):
    ctx, rng = random_context(seed, extra_T=2)
    W, Y = random_element(ctx, rng), random_element(ctx, rng)
    S = add(W, Y)
    assert pbw.order(ctx, S) >= min(pbw.order(ctx, W), pbw.order(ctx, Y))
    assert pbw.length(S) >= min(pbw.length(W), pbw.length(Y))
    assert pbw.order(ctx, pbw.mul(ctx, W, Y)) >= pbw.order(ctx, W) + pbw.order(ctx, Y)
    assert pbw.length(W) <= pbw.order(ctx, W)
