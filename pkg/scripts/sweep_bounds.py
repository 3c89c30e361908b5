#!/usr/bin/env python3
"""Singular-value sweep of a fixture or a frame-system file.

Usage:
  python scripts/sweep_bounds.py onb --grid 512 --csv curve.csv
  python scripts/sweep_bounds.py path/to/system.json --refine 2
"""

import argparse
import json

from nuframe.bounds import frame_bounds_gamma, refine_bounds
from nuframe.fixtures import FIXTURE_NAMES, build_fixture
from nuframe.serialize import curve_to_csv, load_system


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("target", help=f"fixture name ({', '.join(FIXTURE_NAMES)}) or JSON file")
    parser.add_argument("--grid", type=int, default=1024)
    parser.add_argument("--refine", type=int, default=0)
    parser.add_argument("--csv", metavar="OUT")
    args = parser.parse_args()

    if args.target in FIXTURE_NAMES:
        system, _ = build_fixture(args.target)
    else:
        with open(args.target, encoding="utf-8") as fh:
            system = load_system(json.load(fh))

    reports = (
        refine_bounds(system, args.grid, args.refine)
        if args.refine
        else [frame_bounds_gamma(system, args.grid)]
    )
    for rep in reports:
        print(
            f"grid {rep.grid:6d}: a_est {rep.a_est:.9g} at x={rep.x_at_min:.9g}, "
            f"b_est {rep.b_est:.9g} at x={rep.x_at_max:.9g}  [{rep.verdict}]"
        )
    if args.csv:
        curve_to_csv(reports[-1], args.csv)
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
