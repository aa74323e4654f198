"""Command line: ``liefaith {check,build,reduce,filiform10,bounds}``.

Algebras are JSON files::

    {"dim": 4, "brackets": [[1, 2, [[3, "1"]]], [1, 3, [[4, "1"]]]], "labels": ["x1", ...]}

with 1-based indices, ``i < j`` and rationals written ``"p/q"`` or as
integers.  Every command prints a JSON report with sorted keys; failures
exit with status 1 and print ``{"error": {"class": ..., "message": ...}}``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import bounds, filiform10, modules, reducer
from .exactlinalg import Subspace, format_fraction
from .lie import (
    LieAlgebra,
    LieError,
    Representation,
    center,
    derived,
    from_one_based,
    is_filiform,
    lower_central_series,
    validate,
    verify_representation,
)


class ParseError(LieError):
    code = "ParseError"


# ---------------------------------------------------------------------------
# parsing

def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: expected a rational string or integer, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{where}: bad rational {text!r} ({e})") from None


def _load_json(path: str) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def algebra_from_data(data: Any, where: str = "algebra") -> LieAlgebra:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError(f"{where}.dim: expected a non-negative integer")
    entries = data.get("brackets", [])
    if not isinstance(entries, list):
        raise ParseError(f"{where}.brackets: expected a list")
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for e, entry in enumerate(entries):
        f = f"{where}.brackets[{e}]"
        if not (isinstance(entry, list) and len(entry) == 3):
            raise ParseError(f"{f}: expected [i, j, [[k, c], ...]]")
        i, j, terms = entry
        for name, v in (("i", i), ("j", j)):
            if not isinstance(v, int) or not 1 <= v <= dim:
                raise ParseError(f"{f}.{name}: index must lie in 1..{dim}")
        if not i < j:
            raise ParseError(f"{f}: need i < j")
        if (i, j) in table:
            raise ParseError(f"{f}: duplicate pair ({i}, {j})")
        if not isinstance(terms, list):
            raise ParseError(f"{f}[2]: expected a list of [k, c]")
        vec: dict[int, Fraction] = {}
        for t, term in enumerate(terms):
            g = f"{f}[2][{t}]"
            if not (isinstance(term, list) and len(term) == 2):
                raise ParseError(f"{g}: expected [k, c]")
            k, c = term
            if not isinstance(k, int) or not 1 <= k <= dim:
                raise ParseError(f"{g}.k: index must lie in 1..{dim}")
            vec[k] = vec.get(k, Fraction(0)) + parse_rational(c, f"{g}.c")
        table[(i, j)] = vec
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim
                               or not all(isinstance(s, str) for s in labels)):
        raise ParseError(f"{where}.labels: expected {dim} strings")
    return from_one_based(dim, table, labels)


def algebra_to_data(L: LieAlgebra) -> dict:
    out = []
    for (i, j), vec in sorted(L.brackets.items()):
        out.append([i + 1, j + 1, [[k + 1, format_fraction(c)] for k, c in sorted(vec.items())]])
    data: dict[str, Any] = {"dim": L.dim, "brackets": out}
    if L.labels:
        data["labels"] = list(L.labels)
    return data


def matrix_to_data(M) -> list[list[str]]:
    return [[format_fraction(x) for x in row] for row in M]


def module_to_data(rho: Representation, basis: Sequence[str] | None = None) -> dict:
    data: dict[str, Any] = {"dim": rho.dim, "matrices": [matrix_to_data(M) for M in rho.matrices]}
    if basis is not None:
        data["basis"] = list(basis)
    return data


def module_from_data(L: LieAlgebra, data: Any, where: str = "module") -> Representation:
    if not isinstance(data, dict) or "matrices" not in data:
        raise ParseError(f"{where}: expected an object with 'matrices'")
    mats = data["matrices"]
    if not isinstance(mats, list) or len(mats) != L.dim:
        raise ParseError(f"{where}.matrices: expected {L.dim} matrices")
    out = []
    for a, M in enumerate(mats):
        if not isinstance(M, list):
            raise ParseError(f"{where}.matrices[{a}]: expected a list of rows")
        rows = []
        for r, row in enumerate(M):
            if not isinstance(row, list):
                raise ParseError(f"{where}.matrices[{a}][{r}]: expected a row")
            rows.append([parse_rational(x, f"{where}.matrices[{a}][{r}][{c}]") for c, x in enumerate(row)])
        out.append(rows)
    try:
        return Representation.of(L, out)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def parse_indices(text: str, dim: int, what: str) -> list[int]:
    """``"2,3,4"`` -> 0-based ``[1, 2, 3]``."""
    try:
        idx = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"{what}: expected comma separated integers, got {text!r}") from None
    if not idx or any(not 1 <= i <= dim for i in idx) or len(set(idx)) != len(idx):
        raise ParseError(f"{what}: indices must be distinct and lie in 1..{dim}")
    return [i - 1 for i in idx]


def parse_params(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != 13:
        raise ValueError(f"--params needs exactly 13 values, got {len(parts)}")
    return tuple(parse_rational(p, f"--params[{k + 1}]") for k, p in enumerate(parts))


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> dict:
    L = algebra_from_data(_load_json(args.path), "algebra")
    validate(L)
    rep: dict[str, Any] = {"command": "check", "input": algebra_to_data(L), "jacobi": True}
    try:
        _, c = lower_central_series(L)
        rep["nilpotent"], rep["class"] = True, c
    except LieError:
        rep["nilpotent"], rep["class"] = False, None
    rep["center_dim"] = center(L).dim
    rep["derived_dim"] = derived(L).dim
    rep["filiform"] = is_filiform(L)
    rep["mu_bounds"] = bounds.mu_lower(L).as_dict()
    return rep


def _read_filtration(path: str, inner: list[int], L: LieAlgebra) -> list[Subspace]:
    data = _load_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise ParseError(f"{path}: expected {{\"terms\": [[indices], ...]}}")
    pos = {g: p for p, g in enumerate(inner)}
    terms = []
    for t, term in enumerate(data["terms"]):
        if not isinstance(term, list) or not all(isinstance(i, int) for i in term):
            raise ParseError(f"{path}: terms[{t}] must be a list of basis indices")
        if any(i - 1 not in pos for i in term):
            raise ParseError(f"{path}: terms[{t}] uses a basis vector outside the ideal n")
        terms.append(Subspace.coordinate([pos[i - 1] for i in term], len(inner)))
    return terms


def cmd_build(args) -> dict:
    L = algebra_from_data(_load_json(args.path), "algebra")
    validate(L)
    n = L.dim
    inner = parse_indices(args.inner, n, "--inner") if args.inner else None
    inner_list = sorted(inner) if inner is not None else list(range(n))
    if args.ideal == "auto":
        ideal: Any = "auto"
    elif args.ideal.startswith("m="):
        try:
            m = int(args.ideal[2:])
        except ValueError:
            raise ParseError(f"--ideal: bad index in {args.ideal!r}") from None
        if not 1 <= m <= n:
            raise ParseError(f"--ideal: m must lie in 1..{n}")
        ideal = [g for g in inner_list if g >= m - 1]
    else:
        ideal = parse_indices(args.ideal, n, "--ideal")
    if args.filtration in ("lcs", "inner-lcs"):
        filt: Any = args.filtration
    else:
        filt = _read_filtration(args.filtration, inner_list, L)
    mod = modules.build_module(L, inner_list if inner is not None else None, filt, ideal,
                               args.truncate, args.method, args.oracle)
    chk = verify_representation(L, mod.action)
    rep: dict[str, Any] = {
        "command": "build",
        "input": algebra_to_data(L),
        "parameters": {
            "inner": [g + 1 for g in inner_list] if inner is not None else None,
            "ideal": args.ideal,
            "filtration": args.filtration,
            "truncate": args.truncate,
            "method": args.method,
            "oracle": args.oracle,
        },
        "construction": mod.provenance,
        "ideal_basis": ([mod.context.names[c] for c in mod.ideal.indices()] if mod.ideal else None),
        "module": module_to_data(mod.action, mod.basis_names()),
        "verification": {"is_module": chk.is_module, "kernel_dim": chk.kernel.dim,
                         "faithful": chk.faithful},
        "mu_bounds": bounds.mu_lower(L).as_dict(),
    }
    rep["f_n_beta"] = _f_reference(L, inner, mod)
    return rep


def _f_reference(L: LieAlgebra, inner, mod) -> dict | None:
    """``f(n, beta)`` when the input is a filiform algebra used the standard way."""
    n = L.dim
    if n < 3 or inner is None or sorted(inner) != list(range(1, n)) or mod.ideal is None:
        return None
    if not is_filiform(L):
        return None
    beta = mod.ideal.dim
    return {"n": n, "beta": beta, "f": bounds.f(n, beta), "equal": bounds.f(n, beta) == mod.dim}


def cmd_reduce(args) -> dict:
    data = _load_json(args.path)
    if not isinstance(data, dict) or "input" not in data and "algebra" not in data:
        raise ParseError(f"{args.path}: expected an object with 'algebra' (or a build report)")
    L = algebra_from_data(data.get("algebra", data.get("input")), "algebra")
    validate(L)
    rho = module_from_data(L, data.get("module"), "module")
    chk = verify_representation(L, rho)
    if not chk.faithful:
        raise LieError("input module is not a faithful module")
    chain = reducer.reduce_fully(rho, L)
    basis = data["module"].get("basis") if isinstance(data.get("module"), dict) else None
    kept = chain.kept_indices()
    final_names = [basis[k] for k in kept] if isinstance(basis, list) and len(basis) == rho.dim else None
    final = chain.final
    fchk = verify_representation(L, final)
    return {
        "command": "reduce",
        "input": algebra_to_data(L),
        "chain": {
            "dims": chain.dims,
            "steps": [{"dim_before": s.dim_before, "invariant_dim": s.invariant_dim,
                       "removed": s.removed_dim, "dim_after": s.dim_after} for s in chain.steps],
        },
        "module": module_to_data(final, final_names),
        "verification": {"is_module": fchk.is_module, "kernel_dim": fchk.kernel.dim,
                         "faithful": fchk.faithful},
        "mu_bounds": bounds.mu_lower(L).as_dict(),
    }


def cmd_filiform10(args) -> dict:
    alpha = args.params
    eqs = filiform10.equations(alpha)
    bad = [k for k, v in eqs.items() if v]
    if bad:
        raise filiform10.NotAdmissible("violated admissibility equations: " + ", ".join(bad))
    case = filiform10.classify_case(alpha)
    mod = filiform10.build_V58(alpha)
    reg = filiform10.v58_regression(alpha, mod)
    res = filiform10.pipeline(alpha, mod)
    rep: dict[str, Any] = {
        "command": "filiform10",
        "alpha": [format_fraction(a) for a in alpha],
        "admissible": True,
        "equations": {k: format_fraction(v) for k, v in eqs.items()},
        "case": case.path,
        "V58": {"dim": mod.dim, "regression": reg.summary(),
                "mismatched_rows": [f"{g}.v{j}" for g, j in reg.mismatches]},
        "pipeline": {"dims": res.chain.dims, "invariant_dims": res.chain.invariant_dims,
                     "final_dim": res.final_dim},
        "mu_bounds": res.mu.as_dict(),
    }
    if args.emit_module:
        rep["module"] = module_to_data(res.chain.final)
    return rep


def cmd_bounds(args) -> dict:
    n = args.n
    if n < 3:
        raise ValueError(f"--n must be at least 3, got {n}")
    betas = [args.beta] if args.beta is not None else list(range(n - 1, 0, -1))
    rows = []
    for b in betas:
        if not 1 <= b <= n - 1:
            raise ValueError(f"--beta must lie in 1..{n - 1}, got {b}")
        value = bounds.f(n, b)
        cf = bounds.closed_form(n, b)
        rows.append({
            "beta": b,
            "f": value,
            "closed_form": cf,
            "closed_form_agrees": None if cf is None else cf == value,
            "remark_bound": format_fraction(bounds.remark_bound(n, b)),
        })
    return {
        "command": "bounds",
        "n": n,
        "rows": rows,
        "partition_row": list(bounds.p_row(max(n - 1 - min(betas), 0), n - 2)),
        "half_beta_bound": bounds.half_beta_bound(n),
    }


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liefaith", description="faithful modules of nilpotent Lie algebras")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)
    # -o is also accepted after the subcommand
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", default=argparse.SUPPRESS, help="write the report here instead of stdout")

    c = sub.add_parser("check", parents=[out], help="structure report for an algebra file")
    c.add_argument("path")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", parents=[out], help="construct a faithful module")
    b.add_argument("path")
    b.add_argument("--inner", help="1-based indices spanning the ideal n (default: n = g)")
    b.add_argument("--ideal", default="auto", help="auto, m=<index> or a list of indices")
    b.add_argument("--filtration", default="lcs", help="lcs, inner-lcs or a JSON file of terms")
    b.add_argument("--truncate", type=int, default=None)
    b.add_argument("--method", choices=("quotient", "truncation"), default="quotient")
    b.add_argument("--oracle", action="store_true", help="form Z_J by subspace reduction")
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("reduce", parents=[out], help="shrink a faithful module by invariant quotients")
    r.add_argument("path", help="module file or build report")
    r.set_defaults(func=cmd_reduce)

    f = sub.add_parser("filiform10", parents=[out], help="ten-dimensional filiform family")
    f.add_argument("--params", required=True, help="13 comma separated rationals")
    f.add_argument("--emit-module", action="store_true", help="include the final module matrices")
    f.set_defaults(func=cmd_filiform10)

    d = sub.add_parser("bounds", parents=[out], help="table of f(n, beta)")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--beta", type=int, default=None)
    d.set_defaults(func=cmd_bounds)
    return p


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "filiform10":
        try:
            args.params = parse_params(args.params)
        except (ValueError, ParseError) as e:
            parser.error(str(e))
    try:
        report = args.func(args)
    except (LieError, ValueError, ArithmeticError, OSError) as e:
        code = getattr(e, "code", type(e).__name__)
        err = {"error": {"class": code, "message": str(e)}}
        sys.stderr.write(dumps(err))
        return 1
    text = dumps(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
