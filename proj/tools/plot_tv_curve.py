#!/usr/bin/env python3
"""Plot a TV-distance curve produced by `bl tv-curve`, optionally overlaying
the upper-bound points from `bl bounds --kind upper`.

Regenerate the shipped data with:
    bl tv-curve --n1 100 --n2 100 --nw 100 --start 0 --m-max 1000 \
        --output data/fig1_tv_curve.csv
    bl bounds --n1 100 --n2 100 --nw 100 --kind upper \
        --c 0 --c 0.5 --c 1 --c 1.5 --c 2 --c 2.5 --c 3 --c 3.5 --c 4 \
        --output data/fig2_upper_bound.csv

Usage:
    plot_tv_curve.py CURVE.csv [BOUNDS.csv] [-o OUT.png]
"""

import argparse
import csv
import sys
from fractions import Fraction


def read_csv(path):
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [[float(Fraction(x)) for x in row] for row in reader]
    return header, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("curve", help="CSV from `bl tv-curve` (columns m,tv)")
    parser.add_argument("bounds", nargs="?", help="CSV from `bl bounds --kind upper`")
    parser.add_argument("-o", "--output", default="tv_curve.png")
    args = parser.parse_args()

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required for plotting; the CSV data stands alone without it")

    _, rows = read_csv(args.curve)
    steps = [r[0] for r in rows]
    tv = [r[1] for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(steps, tv, lw=1.5, label="exact TV distance")

    if args.bounds:
        _, brows = read_csv(args.bounds)
        ax.plot([r[1] for r in brows], [min(r[2], 1.0) for r in brows], "o--", ms=4,
                label="upper bound (A = 1)")

    ax.set_xlabel("step m")
    ax.set_ylabel("total-variation distance")
    ax.set_ylim(-0.02, 1.05)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
