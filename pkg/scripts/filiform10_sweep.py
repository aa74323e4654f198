"""Sample admissible parameters in every case cell and record the reduction chains.

    python3 scripts/filiform10_sweep.py --per-case 3 --jobs 4 --out sweep.json
"""
import argparse
import json
import random
from concurrent.futures import ProcessPoolExecutor

from liefaith import filiform10 as F10
from liefaith.exactlinalg import format_fraction


def run(job):
    case, seed = job
    alpha = F10.sample_admissible(case, random.Random(seed))
    mod = F10.build_V58(alpha)
    reg = F10.v58_regression(alpha, mod)
    res = F10.pipeline(alpha, mod)
    return {
        "case": case,
        "seed": seed,
        "alpha": [format_fraction(a) for a in alpha],
        "dims": res.chain.dims,
        "invariant_dims": res.chain.invariant_dims,
        "final_dim": res.final_dim,
        "cited_upper": F10.CITED_UPPER[case],
        "regression_mismatches": len(reg.mismatches),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-case", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    jobs = [(c, args.seed * 1000 + k) for c in F10.CASES for k in range(args.per_case)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    print(f"{'case':7} {'final':>5} {'cited':>5}  chain")
    for r in rows:
        print(f"{r['case']:7} {r['final_dim']:5d} {r['cited_upper']:5d}  {r['dims']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
