#!/usr/bin/env python3
"""Plot the step-function CSVs written by `fracsub simulate --plot all`.

    python3 scripts/plot_paths.py RUN_DIR [--id 0] [--out paths.png]

Draws the leading, parent, directing and subordinated walks of one
trajectory on a 2x2 grid. Needs matplotlib.
"""

import argparse
import csv
from pathlib import Path

import matplotlib.pyplot as plt

KINDS = [
    ("leading", "leading walk"),
    ("parent", "parent walk"),
    ("directing", "directing walk"),
    ("subordinated", "subordinated walk"),
]


def read(path):
    with open(path, newline="") as f:
        rows = [r for r in csv.reader(f) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    return header, [float(r[0]) for r in body], [float(r[1]) for r in body]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("run_dir", type=Path)
    ap.add_argument("--id", type=int, default=0)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    fig, axes = plt.subplots(2, 2, figsize=(10, 8))
    for ax, (kind, title) in zip(axes.flat, KINDS):
        header, xs, ys = read(args.run_dir / f"trajectory_{args.id:05}_{kind}.csv")
        ax.plot(xs, ys, lw=0.8)
        ax.set_xlabel(header[0])
        ax.set_ylabel(header[1])
        ax.set_title(title)
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
