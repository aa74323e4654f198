"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary (see ``conftest.py``).  Run directly with ``python3
tests/test_acceptance.py`` to print the lines without pytest.
"""
import random
from fractions import Fraction as F
from functools import lru_cache

import pytest

from liefaith import bounds, pbw
from liefaith import filiform10 as F10
from liefaith.exactlinalg import commutator, is_zero_matrix, mat_add, matmul, unit_vector
from liefaith.lie import adapted_basis, heisenberg, standard_filiform, verify_representation
from liefaith.modules import build_module, two_step_module
from liefaith.samples import random_nilpotent, random_triangular_rep, random_two_step
from liefaith.weights import weight_decompose

RESULTS: list[str] = []
# (algebra, module dimension) for every module built here; used by criterion 10
BUILT: list = []


def faithful(L, rho):
    return verify_representation(L, rho).faithful


@lru_cache(maxsize=None)
def v58(alpha):
    return F10.build_V58(alpha)


@lru_cache(maxsize=None)
def generic_alpha():
    return F10.sample_admissible("2b1", random.Random(2024), generic=True)


# ---------------------------------------------------------------------------

def criterion_1():
    g = standard_filiform(4)
    m1 = build_module(g, [0, 2, 3], "lcs", [2, 3])
    assert m1.dim == 5 and faithful(g, m1.action)
    assert m1.basis_names() == ["1", "X1", "X3", "X1^2", "X4"]
    names = m1.basis_names()
    x2 = m1.action.matrices[1]
    j = names.index("X1^2")
    assert {names[r]: x2[r][j] for r in range(5) if x2[r][j]} == {"X4": 1}
    m2 = build_module(g, [1, 2, 3], "lcs", [1, 2, 3])
    assert m2.dim == 4 and faithful(g, m2.action)
    BUILT.extend([(g, m1.dim), (g, m2.dim)])
    return "dims 5 and 4, x2.X1^2 = X4"


def criterion_2():
    assert bounds.p_row(4, 8) == (1, 1, 2, 3, 5, 6, 9, 11, 15)
    assert bounds.f(10, 5) == 58
    return "p4 row and f(10,5) = 58"


def criterion_3():
    for n in range(4, 31):
        assert bounds.f(n, n - 1) == n
        assert bounds.f(n, n - 2) == 2 * n - 3
        assert 4 * bounds.f(n, n - 3) == n * n + 3 * n - 12 + 2 * (n // 2)
    return "4 <= n <= 30"


def criterion_4():
    for n in range(3, 21):
        vals = [bounds.f(n, b) for b in range(n - 1, 0, -1)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        assert bounds.f(n, 2) == bounds.f(n, 1)
    return "3 <= n <= 20"


def criterion_5():
    alpha = generic_alpha()
    assert F10.classify_case(alpha).path == "2b1"
    # no special vanishing apart from a13 = 0, which defines the branch
    assert all(alpha[:12]) and alpha[12] == 0
    res = F10.pipeline(alpha, v58(alpha))
    assert res.chain.dims[:4] == [58, 43, 32, 23], res.chain.dims
    assert res.chain.invariant_dims[:3] == [16, 12, 10], res.chain.invariant_dims
    assert res.final_dim <= 20
    for step in res.chain.steps:
        assert faithful(res.chain.start.algebra, step.rep)
    BUILT.append((res.chain.start.algebra, res.final_dim))
    return f"chain {res.chain.dims}"


def criterion_6():
    alpha = F10.EXAMPLE_ALPHA
    assert F10.is_admissible(alpha)
    assert F10.classify_case(alpha).path == "2a2b"
    res = F10.pipeline(alpha, v58(alpha))
    assert res.final_dim <= 18
    assert res.mu.lower == 12
    assert res.mu.lower <= res.final_dim and res.mu.upper <= res.final_dim
    BUILT.append((res.chain.start.algebra, res.final_dim))
    return f"final dim {res.final_dim}, bounds [{res.mu.lower}, {res.mu.upper}]"


def criterion_7():
    for alpha in ((0,) * 13, F10.EXAMPLE_ALPHA):
        rep = F10.v58_regression(alpha, v58(alpha))
        assert rep.mismatches == [], rep.mismatches
        counts = rep.summary()
        assert counts["mismatch"] == 0
        assert sum(counts.values()) == 116
    return "0 mismatches, 116 rows for each of 2 tuples"


def criterion_8():
    algebras = [heisenberg(1), heisenberg(2), heisenberg(3)]
    rng = random.Random(8)
    while len(algebras) < 5:
        L = random_two_step(rng, 8)
        if L.dim >= 4:
            algebras.append(L)
    for L in algebras:
        mod = two_step_module(L)
        assert mod.dim == L.dim and faithful(L, mod.action)
        BUILT.append((L, mod.dim))
    return "dims " + ",".join(str(L.dim) for L in algebras)


def _random_inputs(L, rng):
    """A random valid way of calling the builder on ``L``."""
    choice = rng.choice(("lcs", "inner-lcs", "truncation", "inner"))
    if choice == "truncation":
        return L, build_module(L, method="truncation")
    if choice == "inner":
        LL, _ = adapted_basis(L)
        if LL.dim >= 2 and any(LL.basis_bracket(0, j) for j in range(1, LL.dim)):
            return LL, build_module(LL, list(range(1, LL.dim)))
        choice = "lcs"
    return L, build_module(L, filtration=choice)


def criterion_9():
    rng = random.Random(9)
    for _ in range(100):
        L, _ = random_nilpotent(rng, 6, min_dim=rng.randint(1, 6))
        A, mod = _random_inputs(L, rng)
        chk = verify_representation(A, mod.action)
        assert chk.is_module and chk.kernel.dim == 0
        BUILT.append((A, mod.dim))
    contexts = []
    while len(contexts) < 20:
        L, _ = random_nilpotent(rng, 6, min_dim=2)
        LL, _ = adapted_basis(L)
        ctx = pbw.make_context(LL)
        contexts.append(pbw.make_context(LL, T=ctx.C + 1))

    def element(ctx, terms=3):
        mons = list(pbw.iter_monomials(ctx, ctx.T))
        W = {}
        for _ in range(rng.randint(1, terms)):
            a = rng.choice(mons)
            c = F(rng.randint(1, 3), rng.randint(1, 2)) * rng.choice((1, -1))
            W[a] = W.get(a, F(0)) + c
        return {a: c for a, c in W.items() if c}

    def combine(W, Y, s=1):
        out = dict(W)
        pbw._add_into(out, Y, F(s))
        return out

    for k in range(1000):
        ctx = contexts[k % 20]
        W = element(ctx)
        i, j = rng.randrange(ctx.n), rng.randrange(ctx.n)
        lhs = combine(pbw.left_mul(ctx, i, pbw.left_mul(ctx, j, W)), pbw.left_mul(ctx, j, pbw.left_mul(ctx, i, W)), -1)
        br = ctx.algebra.bracket(unit_vector(ctx.n, i), unit_vector(ctx.n, j))
        assert lhs == pbw.left_mul(ctx, br, W)
        A, B = element(ctx, 2), element(ctx, 2)
        assert pbw.mul(ctx, pbw.mul(ctx, A, B), W) == pbw.mul(ctx, A, pbw.mul(ctx, B, W))
        D = ctx.algebra.ad([F(rng.randint(-2, 2)) for _ in range(ctx.n)])
        Dx = [D[r][i] for r in range(ctx.n)]
        assert pbw.derive(ctx, D, pbw.left_mul(ctx, i, W)) == combine(
            pbw.left_mul(ctx, Dx, W), pbw.left_mul(ctx, i, pbw.derive(ctx, D, W)))
    for k in range(1000):
        ctx = contexts[k % 20]
        X, Y = element(ctx), element(ctx)
        S = combine(X, Y)
        assert pbw.order(ctx, S) >= min(pbw.order(ctx, X), pbw.order(ctx, Y))
        assert pbw.order(ctx, pbw.mul(ctx, X, Y)) >= pbw.order(ctx, X) + pbw.order(ctx, Y)
        assert pbw.length(S) >= min(pbw.length(X), pbw.length(Y))
        assert pbw.length(X) <= pbw.order(ctx, X)
    return "100 modules, 1000 straightening instances, 1000 element pairs"


def criterion_10():
    if not BUILT:
        criterion_1()
        criterion_8()
    for L, d in BUILT:
        assert bounds.mu_lower(L).lower <= d
    assert bounds.mu_lower(F10.make_f10(generic_alpha())).lower == 10
    assert bounds.mu_lower(F10.make_f10((0,) * 13)).lower == 10
    return f"{len(BUILT)} constructed modules"


def criterion_11():
    rng = random.Random(11)
    for _ in range(50):
        L, rho, _ = random_triangular_rep(rng)
        s = weight_decompose(L, rho)
        n = L.dim
        for i in range(n):
            assert mat_add(s.delta.matrices[i], s.nu.matrices[i]) == s.conjugated.matrices[i]
            for j in range(n):
                assert matmul(s.delta.matrices[i], s.nu.matrices[j]) == matmul(s.nu.matrices[j], s.delta.matrices[i])
                assert (commutator(s.conjugated.matrices[i], s.conjugated.matrices[j])
                        == commutator(s.nu.matrices[i], s.nu.matrices[j]))
        from liefaith.lie import derived
        for v in derived(L).basis:
            assert is_zero_matrix(s.delta.act(v))
    return "50 representations"


CRITERIA = [
    (1, "dimension-4 worked examples", criterion_1),
    (2, "partition row and f(10,5)", criterion_2),
    (3, "closed forms of f", criterion_3),
    (4, "monotonicity of f in beta", criterion_4),
    (5, "generic filiform-10 reduction chain", criterion_5),
    (6, "example tuple pipeline", criterion_6),
    (7, "V58 action regression", criterion_7),
    (8, "two-step construction", criterion_8),
    (9, "random property suite", criterion_9),
    (10, "lower bounds below achieved dimensions", criterion_10),
    (11, "weight decomposition identities", criterion_11),
]


def run_one(number, title, fn):
    try:
        detail = fn()
    except AssertionError as e:
        RESULTS.append(f"[FAIL] criterion {number:2d}: {title} ({e})")
        raise
    RESULTS.append(f"[PASS] criterion {number:2d}: {title} ({detail})")


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    run_one(number, title, fn)


if __name__ == "__main__":
    import sys

    failed = 0
    for number, title, fn in CRITERIA:
        try:
            run_one(number, title, fn)
        except AssertionError:
            failed += 1
        print(RESULTS[-1], flush=True)
    sys.exit(1 if failed else 0)
