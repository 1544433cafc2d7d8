"""Sampling check of the multipartite orbit-dimension formula plus the witness candidate."""

import argparse

from lu_orbits.harness import verify_theorem2
from lu_orbits.reports import emit_report

DEFAULT_DIMS = ["2,2,2", "2,2,3", "2,3,4", "2,2,2,2", "3,3,3", "2,2,2,3"]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("dims", nargs="*", default=DEFAULT_DIMS)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=2026)
    p.add_argument("--out", default="theorem2.csv")
    args = p.parse_args()

    results = [verify_theorem2(d, args.samples, args.seed) for d in args.dims]
    with open(args.out, "wb") as fh:
        fh.write(emit_report(results, "csv"))
    print(emit_report(results, "text").decode(), end="")


if __name__ == "__main__":
    main()
