"""Adjunction data for the line+conic family along convergents of the optimal weight ratio."""

import argparse

from kstab.adjunction import convergent_weights, qm_minimize, r_sequence
from kstab.catalog import DEFAULT_LINE_CONIC_WEIGHTS, line_conic_family


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=8, help="number of convergents")
    args = ap.parse_args()
    fam = line_conic_family()
    res = qm_minimize(fam, DEFAULT_LINE_CONIC_WEIGHTS)
    print(f"mu* = {res.mu_star}, min A/S = {res.value} ~ {float(res.value):.10f}")
    print(f"{'a':>6} {'b':>6} {'lambda':>14} {'r':>14} {'bound':>14}")
    for row in r_sequence(fam, convergent_weights(res.mu_star, args.count)):
        r = "-" if row["r"] is None else f"{float(row['r']):.10f}"
        b = "-" if row["bound"] is None else f"{float(row['bound']):.10f}"
        print(f"{row['a']:>6} {row['b']:>6} {float(row['lambda']):>14.10f} {r:>14} {b:>14}")


if __name__ == "__main__":
    main()
