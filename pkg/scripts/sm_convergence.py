"""Brute-force S_m against its limit for a monomial valuation on P^1 or P^2."""

import argparse
from fractions import Fraction

from kstab.oracle import MonomialModel, s_convergence


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ambient", choices=("curve", "plane"), default="plane")
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--weights", default="1,2")
    ap.add_argument("--m", default="1,2,4,8,16")
    args = ap.parse_args()
    model = MonomialModel(args.ambient, args.degree, tuple(Fraction(w) for w in args.weights.split(",")))
    rep = s_convergence(model, [int(m) for m in args.m.split(",")])
    print(f"limit {rep.limit}, tolerance {rep.tolerance}")
    for m, s, gap in rep.rows:
        print(f"m={m:>3}  S_m={str(s):>12}  gap={gap}")
    print("ok" if rep.ok else "gap above tolerance")


if __name__ == "__main__":
    main()
