import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liefaith.exactlinalg import Subspace, identity, zeros
from liefaith.lie import (
    CenterDegenerate,
    JacobiViolation,
    LieAlgebra,
    NotDerivation,
    NotNilpotent,
    adapted_basis,
    adjoint,
    affine_embed,
    center,
    change_basis,
    derived,
    direct_sum,
    extend_by_derivation,
    from_one_based,
    heisenberg,
    is_derivation,
    is_filiform,
    is_ideal,
    lower_central_series,
    nilpotency_class,
    pull_back,
    semidirect_decompose,
    split_abelian_factor,
    standard_filiform,
    validate,
    verify_representation,
)
from liefaith.samples import random_nilpotent, random_unimodular


def test_heisenberg_structure(heis):
    assert nilpotency_class(heis) == 2
    assert center(heis).dim == 1
    assert derived(heis).dim == 1
    # h3 has maximal class; h5 does not
    assert is_filiform(heis)
    assert not is_filiform(heisenberg(2))


def test_filiform_flags():
    for n in range(3, 8):
        L = standard_filiform(n)
        assert is_filiform(L) and nilpotency_class(L) == n - 1


def test_one_based_antisymmetry():
    L = from_one_based(3, {(2, 1): {3: 1}})
    assert L.basis_bracket(0, 1) == ((2, F(-1)),)
    assert L.basis_bracket(1, 0) == ((2, F(1)),)


def test_jacobi_violation_detected():
    # [x1,x2]=x3, [x2,x3]=x2: the cyclic sum on (x1,x2,x3) is x3
    L = from_one_based(3, {(1, 2): {3: 1}, (2, 3): {2: 1}})
    with pytest.raises(JacobiViolation):
        validate(L)


def test_not_nilpotent():
    # sl2: [h,e]=2e, [h,f]=-2f, [e,f]=h
    L = from_one_based(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}})
    validate(L)
    with pytest.raises(NotNilpotent):
        lower_central_series(L)


def test_adjoint_is_module_with_center_kernel(heis):
    chk = verify_representation(heis, adjoint(heis))
    assert chk.is_module and chk.kernel.dim == 1


@given(st.integers(0, 10_000))
def test_random_nilpotent_adapted_basis(seed):
    rng = random.Random(seed)
    L, rho = random_nilpotent(rng, 5)
    validate(L)
    assert verify_representation(L, rho).faithful
    LL, P = adapted_basis(L)
    series, c = lower_central_series(LL)
    assert c == nilpotency_class(L)
    for S in series:
        assert S.is_coordinate()
        assert S.pivots == tuple(range(LL.dim - S.dim, LL.dim))
    back = pull_back(_rep_in(LL, L, P, rho), L, P)
    assert verify_representation(L, back).faithful


def _rep_in(LL, L, P, rho):
    # the defining representation written in the new basis
    from liefaith.lie import Representation
    mats = [rho.act([P[i][j] for i in range(L.dim)]) for j in range(L.dim)]
    return Representation.of(LL, mats)


@given(st.integers(0, 10_000))
def test_change_basis_preserves_invariants(seed):
    rng = random.Random(seed)
    L, _ = random_nilpotent(rng, 5)
    P = random_unimodular(rng, L.dim)
    M = change_basis(L, P)
    validate(M)
    assert nilpotency_class(M) == nilpotency_class(L)
    assert center(M).dim == center(L).dim


def test_split_abelian_factor():
    L = direct_sum(heisenberg(1), LieAlgebra(2, {}))
    s = split_abelian_factor(L)
    assert s.ell == 2 and s.inner.dim == 3
    assert derived(s.inner).contains_space(center(s.inner))


def test_derivations():
    L = standard_filiform(4)
    assert is_derivation(L, L.ad(0))
    bad = zeros(4, 4)
    bad[0][0] = F(1)
    assert not is_derivation(L, bad)


def test_extend_by_derivation():
    L = heisenberg(1)
    D = zeros(3, 3)
    D[0][0] = D[2][2] = F(1)  # x1 -> x1, x3 -> x3
    rep = extend_by_derivation(L, D)
    assert rep.dim == 4 and verify_representation(L, rep).faithful
    with pytest.raises(NotDerivation):
        extend_by_derivation(L, identity(3))
    with pytest.raises(CenterDegenerate):
        extend_by_derivation(L, zeros(3, 3))


def test_affine_embedding():
    # B = <b> acting on Q^2 by a nilpotent Jordan block
    D = [[F(0), F(1)], [F(0), F(0)]]
    G, rep = affine_embed([D], 2)
    assert G.dim == 3 and rep.dim == 3
    assert verify_representation(G, rep).faithful


def test_semidirect_decompose(fil4):
    sd = semidirect_decompose(fil4, [1, 2, 3])
    assert sd.outer_indices == (0,)
    assert is_derivation(sd.inner, sd.derivations[0])
    assert is_ideal(fil4, Subspace.coordinate([1, 2, 3], 4))
