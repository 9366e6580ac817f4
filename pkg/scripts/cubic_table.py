"""Print delta_x and the intermediate invariants for every cubic-surface case."""

from kstab.adjunction import adjunction_bound
from kstab.catalog import TABLE_ORDER, cubic_delta, cubic_model


def main() -> None:
    print(f"{'case':<12} {'S':>8} {'T':>5} {'lambda':>8} {'r':>8}  delta_x")
    for case in TABLE_ORDER:
        rep = adjunction_bound(cubic_model(case))
        r = "-" if rep.r is None else str(rep.r)
        s = rep.summary
        print(f"{case:<12} {str(s.s):>8} {str(s.t):>5} {str(rep.lam):>8} {r:>8}  {cubic_delta(case)}")


if __name__ == "__main__":
    main()
