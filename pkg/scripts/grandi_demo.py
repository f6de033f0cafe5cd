"""Sum Grandi's series and 1 - 2 + 3 - ... under a few Nörlund methods."""
import argparse

from norlund import summability_report
from norlund.families import cesaro, delta, harmonic
from norlund.kernel import to_decimal
from norlund.series import named_terms


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=400)
    args = ap.parse_args()
    M = args.horizon

    methods = [delta(M), cesaro(1, M), cesaro(2, M), harmonic(M)]
    for series in ("grandi", "natural-alternating"):
        terms = named_terms(series, M)
        print(f"{series} (M={M})")
        for method in methods:
            d = summability_report(method, terms)
            print(f"  {method.name:<10} {d.verdict.value:<20} last mean {to_decimal(d.estimated_limit, 8)}")


if __name__ == "__main__":
    main()
