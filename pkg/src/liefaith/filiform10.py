"""The 13-parameter family of ten-dimensional filiform Lie algebras.

Basis ``x1..x10`` with ``[x1, xi] = x(i+1)`` and the remaining brackets
depending linearly on ``alpha = (a1, ..., a13)``.  The table defines a Lie
algebra exactly when three polynomial equations hold.  The general faithful
module has dimension 58 (``J = <x6..x10>``, ``beta = 5``) and is then
shrunk by quotients by invariants.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import modules
from .bounds import MuEstimate, mu_lower
from .exactlinalg import ZERO, to_fraction
from .lie import JacobiViolation, LieAlgebra, LieError, Representation, from_one_based, validate
from .modules import QuotientModule
from .reducer import ReductionChain, reduce_fully


class NotAdmissible(LieError):
    code = "NotAdmissible"


CASES = ("1", "2a1", "2a2a", "2a2b", "2b1", "2b2a", "2b2b1", "2b2b2")

# upper bounds for mu reported for each case; the dimension-10 and -11 ones
# come from constructions outside this package
CITED_UPPER = {"1": 10, "2a1": 11, "2a2a": 11, "2a2b": 18, "2b1": 10, "2b2a": 11, "2b2b1": 11, "2b2b2": 15}

EXAMPLE_ALPHA = (1, 0, 0, 0, 0, 0, -1, 1, 0, 0, 3, -16, 1)
# lower bound quoted for that example, not recomputed here
EXAMPLE_LOWER = 12


def _params(alpha: Sequence) -> tuple[Fraction, ...]:
    if len(alpha) != 13:
        raise ValueError(f"expected 13 parameters, got {len(alpha)}")
    return (ZERO,) + tuple(to_fraction(x) for x in alpha)


def equations(alpha: Sequence) -> dict[str, Fraction]:
    """Values of the three admissibility polynomials (all zero when admissible)."""
    a = _params(alpha)
    return {
        "eq1": a[11] * (2 * a[1] + a[7]) - 3 * a[7] ** 2,
        "eq2": a[13] * (2 * a[1] - a[7] - a[11]),
        "eq3": (a[13] * (2 * a[3] + a[9]) - a[12] * (2 * a[1] + a[7])
                - 3 * a[11] * (a[2] + a[8]) + 7 * a[7] * a[8]),
    }


def consequence(alpha: Sequence) -> Fraction:
    """``a13 (a1^2 - a7^2)``, forced to vanish by the equations."""
    a = _params(alpha)
    return a[13] * (a[1] ** 2 - a[7] ** 2)


def violated(alpha: Sequence) -> list[str]:
    return [k for k, v in equations(alpha).items() if v]


def is_admissible(alpha: Sequence) -> bool:
    return not violated(alpha)


def bracket_table(alpha: Sequence) -> dict[tuple[int, int], dict[int, Fraction]]:
    """1-based brackets ``{(i, j): {k: c}}`` for any parameter tuple."""
    a = _params(alpha)
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(2, 10):
        br[(1, i)] = {i + 1: Fraction(1)}
    br[(2, 3)] = {5: a[1], 6: a[2], 7: a[3], 8: a[4], 9: a[5], 10: a[6]}
    br[(2, 4)] = {6: a[1], 7: a[2], 8: a[3], 9: a[4], 10: a[5]}
    br[(2, 5)] = {7: a[1] - a[7], 8: a[2] - a[8], 9: a[3] - a[9], 10: a[4] - a[10]}
    br[(2, 6)] = {8: a[1] - 2 * a[7], 9: a[2] - 2 * a[8], 10: a[3] - 2 * a[9]}
    br[(2, 7)] = {9: a[1] - 3 * a[7] + a[11], 10: a[2] - 3 * a[8] + a[12]}
    br[(2, 8)] = {10: a[1] - 4 * a[7] + 3 * a[11]}
    br[(2, 9)] = {10: -a[13]}
    br[(3, 4)] = {7: a[7], 8: a[8], 9: a[9], 10: a[10]}
    br[(3, 5)] = {8: a[7], 9: a[8], 10: a[9]}
    br[(3, 6)] = {9: a[7] - a[11], 10: a[8] - a[12]}
    br[(3, 7)] = {10: a[7] - 2 * a[11]}
    br[(3, 8)] = {10: a[13]}
    br[(4, 5)] = {9: a[11], 10: a[12]}
    br[(4, 6)] = {10: a[11]}
    br[(4, 7)] = {10: -a[13]}
    br[(5, 6)] = {10: a[13]}
    return br


def make_f10(alpha: Sequence) -> LieAlgebra:
    bad = violated(alpha)
    if bad:
        raise NotAdmissible("violated admissibility equations: " + ", ".join(bad))
    L = from_one_based(10, bracket_table(alpha))
    try:
        validate(L)
    except JacobiViolation as e:
        raise NotAdmissible(f"equations hold but Jacobi fails: {e}") from e
    return L


def table_algebra(alpha: Sequence) -> LieAlgebra:
    """The bracket table as an anticommutative algebra, without any check."""
    return from_one_based(10, bracket_table(alpha))


# ---------------------------------------------------------------------------
# case tree

@dataclass(frozen=True)
class CaseLabel:
    path: str
    first_equivalence: bool | None = None  # case 1 only: a1 = a7 = 0 holds

    def __str__(self):
        return self.path


def classify_case(alpha: Sequence) -> CaseLabel:
    bad = violated(alpha)
    if bad:
        raise NotAdmissible("violated admissibility equations: " + ", ".join(bad))
    a = _params(alpha)
    if 2 * a[1] + a[7] == 0:
        both = a[1] == 0 and a[7] == 0
        assert both
        return CaseLabel("1", both)
    if a[13]:
        if a[7] == a[1]:
            return CaseLabel("2a1")
        assert a[7] == -a[1]
        return CaseLabel("2a2a" if 3 * a[2] + a[8] == 0 else "2a2b")
    if a[7] ** 2 != a[1] ** 2:
        return CaseLabel("2b1")
    if a[7] == a[1]:
        return CaseLabel("2b2a")
    return CaseLabel("2b2b1" if 3 * a[2] + a[8] == 0 else "2b2b2")


def _nonzero(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3)))
        if v:
            return v


def sample_admissible(case: str, rng: random.Random | None = None, generic: bool = True) -> tuple[Fraction, ...]:
    """Random admissible tuple in the requested case cell.

    Free parameters are drawn nonzero when ``generic`` is set, otherwise
    they may vanish.
    """
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    rng = rng or random.Random()

    def free():
        return _nonzero(rng) if generic else Fraction(rng.randint(-3, 3))

    for _ in range(1000):
        a = [ZERO] + [free() for _ in range(13)]
        if case == "1":
            a[1] = a[7] = ZERO
            a[11] = ZERO
            if rng.random() < 0.5:
                a[9] = -2 * a[3]
            else:
                a[13] = ZERO
        else:
            if case.startswith("2a") or case.startswith("2b2"):
                a[7] = a[1] if case in ("2a1", "2b2a") else -a[1]
                if case in ("2a2a", "2b2b1"):
                    a[8] = -3 * a[2]
            elif a[7] ** 2 == a[1] ** 2:
                continue
            s = 2 * a[1] + a[7]
            if s == 0:
                continue
            a[11] = 3 * a[7] ** 2 / s
            if case.startswith("2b"):
                a[13] = ZERO
            a[12] = (a[13] * (2 * a[3] + a[9]) - 3 * a[11] * (a[2] + a[8]) + 7 * a[7] * a[8]) / s
        alpha = tuple(a[1:])
        if is_admissible(alpha) and classify_case(alpha).path == case:
            return alpha
    raise RuntimeError(f"could not sample case {case}")


def rescale(alpha: Sequence, s: Fraction, t: Fraction) -> tuple[Fraction, ...]:
    """Parameters after ``x1 -> s x1``, ``x2 -> t x2`` (and ``x(i+1) = [x1, xi]``).

    Then ``x_i`` is scaled by ``s^(i-2) t`` for ``i >= 2``.  Solving for the
    new structure constants gives the transformed tuple.
    """
    a = _params(alpha)
    s, t = to_fraction(s), to_fraction(t)
    if not s or not t:
        raise ValueError("scalings must be nonzero")

    def w(i):
        return s ** (i - 2) * t

    # [y_i, y_j] = w(i) w(j) [x_i, x_j] and x_k = y_k / w(k)
    def new(i, j, k):
        return w(i) * w(j) / w(k)

    b = [ZERO] * 14
    for idx, k in zip(range(1, 7), range(5, 11)):
        b[idx] = a[idx] * new(2, 3, k)
    for idx, k in zip(range(7, 11), range(7, 11)):
        b[idx] = a[idx] * new(3, 4, k)
    b[11] = a[11] * new(4, 5, 9)
    b[12] = a[12] * new(4, 5, 10)
    b[13] = a[13] * new(5, 6, 10)
    return tuple(b[1:])


# ---------------------------------------------------------------------------
# the module V58

# basis of V58 in the reference order, grouped by order value
V58_TABLE: tuple[str, ...] = (
    "1",
    "x2",
    "x3", "x2^2",
    "x4", "x2*x3", "x2^3",
    "x5", "x2*x4", "x3^2", "x2^2*x3", "x2^4",
    "x6", "x3*x4", "x2*x5", "x2^2*x4", "x2*x3^2", "x2^3*x3", "x2^5",
    "x7", "x4^2", "x3*x5", "x2*x3*x4", "x3^3", "x2^2*x5", "x2^3*x4", "x2^2*x3^2", "x2^4*x3", "x2^6",
    "x8", "x4*x5", "x2*x4^2", "x3^2*x4", "x2*x3*x5", "x2^2*x3*x4", "x2*x3^3", "x2^3*x5", "x2^4*x4",
    "x2^3*x3^2", "x2^5*x3", "x2^7",
    "x9", "x3*x4^2", "x5^2", "x2*x4*x5", "x3^2*x5", "x2^2*x4^2", "x2*x3^2*x4", "x3^4", "x2^2*x3*x5",
    "x2^3*x3*x4", "x2^2*x3^3", "x2^4*x5", "x2^5*x4", "x2^4*x3^2", "x2^6*x3", "x2^8",
    "x10",
)
ORDER_COUNTS = (1, 1, 2, 3, 5, 7, 10, 12, 16, 1)


def _parse_monomial(text: str) -> dict[int, int]:
    """``"x2^2*x3"`` -> ``{2: 2, 3: 1}`` (1-based indices of the algebra)."""
    out: dict[int, int] = {}
    if text == "1":
        return out
    for part in text.split("*"):
        name, _, e = part.partition("^")
        out[int(name[1:])] = out.get(int(name[1:]), 0) + (int(e) if e else 1)
    return out


def _table_positions(mod: QuotientModule) -> list[int]:
    """Position in ``mod.basis`` of every reference basis vector."""
    ctx = mod.context
    where = {name: c for c, name in enumerate(ctx.names)}
    pos = {a: j for j, a in enumerate(mod.basis)}
    out = []
    for text in V58_TABLE:
        a = [0] * ctx.n
        for g, e in _parse_monomial(text).items():
            a[where[f"X{g}"]] = e
        out.append(pos[tuple(a)])
    return out


def build_V58(alpha: Sequence) -> QuotientModule:
    """Faithful module of dimension 58, basis in the reference order."""
    f = make_f10(alpha)
    mod = modules.filiform_module(f, 5)
    if mod.dim != 58:
        raise LieError(f"expected dimension 58, got {mod.dim}")
    perm = _table_positions(mod)
    if sorted(perm) != list(range(58)):
        raise LieError("reference table does not match the module basis")
    mats = [[[M[perm[r]][perm[c]] for c in range(58)] for r in range(58)] for M in mod.action.matrices]
    rep = Representation.of(f, mats)
    basis = tuple(mod.basis[p] for p in perm)
    return QuotientModule(basis, rep, mod.context, "V58", mod.ideal)


def x1_rows(alpha: Sequence) -> dict[int, dict[int, Fraction]]:
    """Reference images ``x1 . v_j`` as ``{j: {k: coeff}}`` (1-based)."""
    a = _params(alpha)
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13 = a[1:]
    r = {
        1: {},
        2: {3: 1},
        3: {5: 1},
        4: {6: 2, 8: -a1, 13: -a2, 20: -a3, 30: -a4, 42: -a5, 58: -a6},
        5: {8: 1},
        6: {9: 1, 10: 1},
        7: {11: 3, 15: -3 * a1, 20: a1 * (a1 - a7),
            30: 2 * a1 * a2 - 2 * a2 * a7 - a1 * a8,
            42: 2 * a1 * a3 - a1 * a9 + a11 * a3 + a2 ** 2 - 2 * a2 * a8 - 3 * a3 * a7,
            58: (2 * a1 * a4 - a1 * a10 + 3 * a11 * a4 + a12 * a3 - a13 * a5 + 2 * a2 * a3
                 - 2 * a2 * a9 - 3 * a3 * a8 - 4 * a4 * a7)},
        8: {13: 1},
        9: {14: 1, 15: 1},
        10: {14: 2, 20: -a7, 30: -a8, 42: -a9, 58: -a10},
        11: {16: 1, 17: 2, 22: -a1, 30: a1 * a7, 42: a1 * a8 - a11 * a2 + a2 * a7,
             58: a1 * a9 - 2 * a11 * a3 - a12 * a2 + a13 * a4 + a2 * a8 + a3 * a7},
        12: {18: 4, 25: -6 * a1, 42: a1 * (4 * a1 * a7 - a1 ** 2 - 3 * a1 * a11),
             58: (4 * a1 ** 2 * a8 - a1 ** 2 * a12 - 3 * a1 ** 2 * a2 - 6 * a1 * a11 * a2
                  + 3 * a1 * a11 * a8 + a1 * a12 * a7 + 2 * a1 * a13 * a3 - a1 * a13 * a9
                  + 11 * a1 * a2 * a7 - 7 * a1 * a7 * a8 + a11 * a13 * a3 + 6 * a11 * a2 * a7
                  + a13 * a2 ** 2 - 2 * a13 * a2 * a8 - 3 * a13 * a3 * a7 - 8 * a2 * a7 ** 2)},
        13: {20: 1},
        14: {21: 1, 22: 1},
        15: {22: 1},
        16: {23: 2, 25: 1, 31: -a1, 42: a1 * a11, 58: a1 * a12 + a11 * a2 - a13 * a3},
        17: {23: 2, 24: 1},
        18: {26: 1, 27: 3, 34: -3 * a1,
             58: (2 * a1 ** 2 * a11 - a1 ** 2 * a7 - 2 * a1 * a11 * a7 - 2 * a1 * a13 * a2
                  + a1 * a13 * a8 + a1 * a7 ** 2 + 2 * a13 * a2 * a7)},
        19: {28: 5, 37: -10 * a1, 58: a1 * a13 * (4 * a1 * a7 - a1 ** 2 - 3 * a1 * a11)},
        20: {30: 1},
        21: {31: 2, 42: -a11, 58: -a12},
        22: {31: 1},
        23: {32: 1, 33: 1, 34: 1},
        24: {33: 3, 58: a7 ** 2 - 2 * a11 * a7 + a13 * a8},
        25: {34: 2, 44: -a1, 58: a13 * a2},
        26: {35: 3, 37: 1, 45: -3 * a1, 58: a1 * a13 * (a1 - a7)},
        27: {35: 2, 36: 2, 46: -a1, 58: -a1 * a13 * a7},
        28: {38: 1, 39: 4, 50: -6 * a1},
        29: {40: 6, 53: -15 * a1},
        30: {42: 1},
        31: {44: 1},
        32: {43: 1, 45: 2},
        33: {43: 2, 46: 1, 58: -a13 * a7},
        34: {45: 1, 46: 1},
        35: {47: 1, 48: 2, 50: 1},
        36: {48: 3, 49: 1},
        37: {50: 3},
        38: {51: 4, 53: 1},
        39: {51: 2, 52: 3},
        40: {54: 1, 55: 5},
        41: {56: 7},
        42: {58: 1},
        43: {},
        44: {58: -a13},
    }
    for j in range(45, 59):
        r[j] = {}
    return {j: {k: to_fraction(c) for k, c in row.items() if c} for j, row in r.items()}


_X2_IMAGE = {
    1: 2, 2: 4, 3: 6, 4: 7, 5: 9, 6: 11, 7: 12, 8: 15, 9: 16, 10: 17,
    11: 18, 12: 19, 14: 23, 15: 25, 16: 26, 17: 27, 18: 28, 19: 29,
    21: 32, 22: 34, 23: 35, 24: 36, 25: 37, 26: 38, 27: 39, 28: 40, 29: 41,
    31: 45, 32: 47, 33: 48, 34: 50, 35: 51, 36: 52, 37: 53, 38: 54, 39: 55, 40: 56, 41: 57,
}


def x2_rows() -> dict[int, dict[int, Fraction]]:
    return {j: ({_X2_IMAGE[j]: Fraction(1)} if j in _X2_IMAGE else {}) for j in range(1, 59)}


@dataclass
class RegressionReport:
    rows: dict[str, list[tuple[int, str]]]  # generator -> [(row, status)]

    def count(self, status: str) -> int:
        return sum(1 for rs in self.rows.values() for _, s in rs if s == status)

    @property
    def mismatches(self) -> list[tuple[str, int]]:
        return [(g, j) for g, rs in self.rows.items() for j, s in rs if s == "mismatch"]

    def summary(self) -> dict:
        return {s: self.count(s) for s in ("match", "match-up-to-documented-sign", "mismatch")}


def _column(M, j: int) -> dict[int, Fraction]:
    return {r + 1: M[r][j - 1] for r in range(len(M)) if M[r][j - 1]}


def v58_regression(alpha: Sequence, module: QuotientModule | None = None) -> RegressionReport:
    """Compare the computed actions of ``x1`` and ``x2`` with the reference rows."""
    mod = module if module is not None else build_V58(alpha)
    out: dict[str, list[tuple[int, str]]] = {}
    for g, ref in (("x1", x1_rows(alpha)), ("x2", x2_rows())):
        M = mod.action.matrices[0 if g == "x1" else 1]
        res = []
        for j in range(1, 59):
            got = _column(M, j)
            want = ref[j]
            if got == want:
                status = "match"
            elif got == {k: -c for k, c in want.items()}:
                status = "match-up-to-documented-sign"
            else:
                status = "mismatch"
            res.append((j, status))
        out[g] = res
    return RegressionReport(out)


# ---------------------------------------------------------------------------
# pipeline

@dataclass
class PipelineResult:
    alpha: tuple[Fraction, ...]
    case: CaseLabel
    chain: ReductionChain
    mu: MuEstimate

    @property
    def final_dim(self) -> int:
        return self.chain.final.dim


def pipeline(alpha: Sequence, module: QuotientModule | None = None) -> PipelineResult:
    case = classify_case(alpha)
    mod = module if module is not None else build_V58(alpha)
    L = mod.action.algebra
    chain = reduce_fully(mod.action, L)
    mu = mu_lower(L)
    if tuple(to_fraction(x) for x in alpha) == tuple(to_fraction(x) for x in EXAMPLE_ALPHA):
        mu.add("example_lower", EXAMPLE_LOWER, "lower", "cited")
    mu.add(f"case_{case.path}", CITED_UPPER[case.path], "upper", "cited")
    mu.add("achieved", chain.final.dim, "upper", "computed")
    return PipelineResult(tuple(to_fraction(x) for x in alpha), case, chain, mu)
