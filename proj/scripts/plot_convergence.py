#!/usr/bin/env python3
"""Plot per-frame mean delay from a convergence.csv produced by
`irsoff convergence`."""

import argparse
import csv
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", type=pathlib.Path, help="convergence.csv from the simulator")
    ap.add_argument("-o", "--output", type=pathlib.Path, default=None,
                    help="output image (default: alongside the CSV)")
    args = ap.parse_args()

    with args.csv.open(newline="") as f:
        reader = csv.DictReader(f)
        schemes = [c for c in reader.fieldnames if c != "frame"]
        frames, series = [], {s: [] for s in schemes}
        for row in reader:
            frames.append(int(row["frame"]))
            for s in schemes:
                series[s].append(float(row[s]))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for s in schemes:
        ax.plot(frames, series[s], label=s, linewidth=1.5)
    ax.set_xlabel("frame")
    ax.set_ylabel("mean weighted delay (s)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()

    out = args.output or args.csv.with_suffix(".png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
