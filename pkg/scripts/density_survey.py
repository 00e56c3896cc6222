"""Least-type density at a geometric ladder of N, as CSV rows.

    python scripts/density_survey.py --start 10000 --factor 4 --steps 4
"""

import argparse
import csv
import sys
import time

from pellinv.survey import default_jobs, least_type_density


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=10_000)
    ap.add_argument("--factor", type=int, default=4)
    ap.add_argument("--steps", type=int, default=4)
    ap.add_argument("--method", choices=["families", "oracle"], default="families")
    ap.add_argument("--jobs", type=int, default=default_jobs())
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=["N", "category", "count", "total", "ratio", "decimal"])
    w.writeheader()
    N = args.start
    for _ in range(args.steps):
        t0 = time.perf_counter()
        rep = least_type_density(N, args.method, args.jobs)
        for row in rep.rows():
            w.writerow({"N": N, **row})
        print(f"N={N}: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
        N *= args.factor
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
