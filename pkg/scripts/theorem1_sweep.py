"""Witness sweep over all bipartite (m, n) up to a bound, written as CSV."""

import argparse
import sys
import time

from lu_orbits.harness import verify_theorem1
from lu_orbits.reports import emit_report


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--out", default="theorem1.csv")
    args = p.parse_args()

    t0 = time.perf_counter()
    rows = verify_theorem1(args.n_max, args.n_max)
    with open(args.out, "wb") as fh:
        fh.write(emit_report(rows, "csv"))
    sys.stdout.write(emit_report(rows, "text").decode())
    print(f"{sum(r.passed for r in rows)}/{len(rows)} rows pass in {time.perf_counter() - t0:.2f}s -> {args.out}")


if __name__ == "__main__":
    main()
