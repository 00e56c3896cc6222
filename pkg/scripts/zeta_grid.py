"""Partial zeta sums over least-to-0 d against all non-square d, for s approaching 1."""

import argparse
import csv
import sys
from fractions import Fraction

from pellinv.survey import render, zeta_grid

FIELDS = ["sum_least", "sum_all_nonsquare", "difference", "complete_nonsquare", "residual"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, action="append", help="repeatable; default 1e3, 1e4, 1e5")
    ap.add_argument("--s", action="append", help="rational s > 1; default 2, 3/2, 5/4, 11/10")
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    limits = args.limit or [10**3, 10**4, 10**5]
    s_values = [Fraction(s) for s in (args.s or ["2", "3/2", "5/4", "11/10"])]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["s", "N"] + FIELDS)
    for N in limits:
        for s, z in zip(s_values, zeta_grid(N, s_values)):
            w.writerow([str(s), N] + [render(getattr(z, f)) for f in FIELDS])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
