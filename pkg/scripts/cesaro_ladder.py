"""Riesz evidence for inclusions between Cesàro methods of several orders.

Higher-order Cesàro methods include lower ones, so the table should show
holds-evidence above the diagonal and fails-evidence below it.
"""
import argparse
from fractions import Fraction

from norlund import inclusion_report
from norlund.families import cesaro

SHORT = {"holds-evidence": "holds", "fails-evidence": "FAILS", "inconclusive": "?"}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=256)
    ap.add_argument("--orders", default="1/2,1,3/2,2,3")
    args = ap.parse_args()

    orders = [Fraction(a) for a in args.orders.split(",")]
    ms = {a: cesaro(a, args.horizon) for a in orders}
    print("p \\ q".ljust(8) + "".join(str(b).rjust(8) for b in orders))
    for a in orders:
        cells = [SHORT[inclusion_report(ms[a], ms[b]).verdict.value] for b in orders]
        print(str(a).ljust(8) + "".join(c.rjust(8) for c in cells))


if __name__ == "__main__":
    main()
