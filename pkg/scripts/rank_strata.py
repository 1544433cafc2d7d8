"""Orbit-dimension histograms of random states as a function of their rank.

Low-rank states sit on lower strata; only a few ranks already reach the
generic dimension.
"""

import argparse

from lu_orbits.harness import survey
from lu_orbits.states import PartyDims


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dims", default="2,2")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    dims = PartyDims.of(args.dims)
    print(f"dims {dims.label()}, generic orbit dimension {dims.max_orbit_dim}")
    for rank in range(1, dims.total + 1):
        s = survey(dims, args.samples, args.seed, rank)
        print(f"rank {rank:2d}: {s.orbit_dim_histogram}  generic fraction {s.generic_fraction:.2f}")


if __name__ == "__main__":
    main()
