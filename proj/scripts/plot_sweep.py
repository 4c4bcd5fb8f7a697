#!/usr/bin/env python3
"""Plot mean delay with standard-error bars from a sweep_<axis>_agg.csv
produced by `irsoff sweep`."""

import argparse
import csv
import collections
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", type=pathlib.Path, help="sweep_<axis>_agg.csv from the simulator")
    ap.add_argument("-o", "--output", type=pathlib.Path, default=None,
                    help="output image (default: alongside the CSV)")
    args = ap.parse_args()

    points = collections.defaultdict(list)  # scheme -> [(value, mean, stderr)]
    axis = "value"
    with args.csv.open(newline="") as f:
        for row in csv.DictReader(f):
            axis = row["axis"]
            points[row["scheme"]].append(
                (float(row["value"]), float(row["mean_delay_s"]),
                 float(row["stderr_mean_delay_s"])))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for scheme, rows in points.items():
        rows.sort()
        xs = [r[0] for r in rows]
        ys = [r[1] for r in rows]
        es = [r[2] for r in rows]
        ax.errorbar(xs, ys, yerr=es, label=scheme, marker="o", capsize=3, linewidth=1.5)
    ax.set_xlabel(axis)
    ax.set_ylabel("mean weighted delay (s)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()

    out = args.output or args.csv.with_suffix(".png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
