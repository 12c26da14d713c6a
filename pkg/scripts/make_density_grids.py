#!/usr/bin/env python3
"""Density grids of the limiting laws for several orders, as CSV.

The grids reproduce the family of limit densities (singular at 0,
square-root soft edge at L(r)) for external plotting.
"""

import pathlib
import sys

from youngspec.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"


def run() -> None:
    OUT.mkdir(exist_ok=True)
    for r in (1, 2, 3, 4):
        rc = main(["law", "--r", str(r), "--grid", "768", "--tol", "1e-5", "--kmax", "6",
                   "--format", "csv", "--out", str(OUT / f"density_r{r}.csv")])
        rc |= main(["law", "--r", str(r), "--grid", "768", "--tol", "1e-5", "--kmax", "6",
                    "--out", str(OUT / f"law_r{r}.json")])
        if rc:
            sys.exit(rc)
        print(f"r={r}: wrote density_r{r}.csv and law_r{r}.json")


if __name__ == "__main__":
    run()
