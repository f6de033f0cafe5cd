"""Regularity evidence for the built-in families, with B_M = q_M / Q_M."""
import argparse

from norlund import regularity_report
from norlund.families import cesaro, geometric, harmonic
from norlund.kernel import to_decimal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=512)
    args = ap.parse_args()
    M = args.horizon

    for q in (cesaro(1, M), cesaro(2, M), cesaro("1/3", M), harmonic(M), geometric("1/2", M), geometric(2, M)):
        rep = regularity_report(q)
        print(f"{q.name:<14} {rep.verdict.value:<16} B_M = {to_decimal(rep.r2_profile[M], 6)}")


if __name__ == "__main__":
    main()
