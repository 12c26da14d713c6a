#!/usr/bin/env python3
"""Ensemble sweep over block orders: spectra vs the limiting law.

Writes one JSON record and one histogram CSV per order into out/.
"""

import pathlib
import sys

from youngspec.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"
SEED = 20260809


def run() -> None:
    OUT.mkdir(exist_ok=True)
    for r, dilation in ((1, 60), (2, 60), (3, 40)):
        base = ["simulate", "--r", str(r), "--dilation", str(dilation),
                "--entries", "complex-gaussian", "--replicas", "40",
                "--seed", str(SEED), "--kmax", "6", "--bins", "96"]
        rc = main(base + ["--out", str(OUT / f"block_r{r}.json")])
        rc |= main(base + ["--format", "csv", "--out", str(OUT / f"block_r{r}_hist.csv")])
        if rc:
            sys.exit(rc)
        print(f"r={r}: wrote block_r{r}.json and block_r{r}_hist.csv")


if __name__ == "__main__":
    run()
