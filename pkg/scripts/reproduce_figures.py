#!/usr/bin/env python3
"""Regenerate every bundled figure preset as CSV files.

Each preset writes one file per curve into the output directory; plotting
is left to downstream tools (gnuplot, matplotlib, ...).
"""

import argparse
import sys

from jcmbinom.cli import PRESET_NAMES, main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="reproduced")
    parser.add_argument("--tmax", type=float, default=50.0)
    parser.add_argument("--steps", type=int, default=4000)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--presets", nargs="*", default=list(PRESET_NAMES),
                        choices=PRESET_NAMES)
    args = parser.parse_args()

    for preset in args.presets:
        code = cli_main([
            "reproduce", preset,
            "--outdir", args.outdir,
            "--tmax", str(args.tmax),
            "--steps", str(args.steps),
            "--threads", str(args.threads),
        ])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
