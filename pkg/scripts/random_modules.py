"""Build faithful modules for random nilpotent algebras and shrink them.

Prints one line per algebra: dimension, class, lower bound, built and
reduced module dimensions.
"""
import argparse
import random

from liefaith.bounds import mu_lower
from liefaith.lie import nilpotency_class, verify_representation
from liefaith.modules import build_module
from liefaith.reducer import reduce_fully
from liefaith.samples import random_nilpotent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--max-dim", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print("dim class lower built reduced")
    for _ in range(args.count):
        L, _ = random_nilpotent(rng, args.max_dim, min_dim=2)
        mod = build_module(L)
        chain = reduce_fully(mod.action, L)
        assert verify_representation(L, chain.final).faithful
        print(f"{L.dim:3d} {nilpotency_class(L):5d} {mu_lower(L).lower:5d} {mod.dim:5d} {chain.final.dim:7d}")


if __name__ == "__main__":
    main()
