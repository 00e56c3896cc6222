"""Empirical share of d whose expansion of omega_d starts with a given prefix."""

import argparse
import csv
import sys

from pellinv.survey import predecessor_density, render

DEFAULT_PREFIXES = ["1", "2", "3", "1,1", "2,1", "1,2", "1,1,1"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=10**6)
    ap.add_argument("--ring", type=int, choices=[0, 1], default=0)
    ap.add_argument("--prefix", action="append", help="comma list; repeatable")
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["prefix", "N", "ring", "count", "ratio", "limit", "relative_error"])
    for text in args.prefix or DEFAULT_PREFIXES:
        prefix = [int(t) for t in text.split(",")]
        r = predecessor_density(prefix, args.limit, args.ring)
        w.writerow([text, r.N, r.ring, r.count, render(r.ratio), f"{r.expected.numerator}/{r.expected.denominator}",
                    f"{r.relative_error:.4%}"])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
