"""Print f(n, beta) for a range of n together with the auxiliary bounds."""
import argparse

from liefaith import bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmin", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=12)
    args = ap.parse_args()
    for n in range(args.nmin, args.nmax + 1):
        row = [bounds.f(n, b) for b in range(n - 1, 0, -1)]
        print(f"n={n:2d}  f(n, n-1..1) = {row}  half-beta bound = {bounds.half_beta_bound(n)}")
    print()
    print("remark bound for n = 10:")
    for b in range(9, 0, -1):
        print(f"  beta={b}: f={bounds.f(10, b):5d}  bound={bounds.remark_bound(10, b)}")


if __name__ == "__main__":
    main()
