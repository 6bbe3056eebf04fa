"""Estimate both coherence constants on a grid of small (n, m, field) and
compare with the Welch and orthoplex bounds.

    python scripts/estimate_table.py [--budget 20] [--csv out.csv]
"""
import argparse
import csv
import sys

from framelab.optimize import estimate_constants

GRID = [
    (2, 3, "R"), (2, 4, "R"), (2, 5, "R"), (2, 4, "C"), (2, 5, "C"), (2, 6, "C"),
    (3, 4, "R"), (3, 5, "R"), (3, 6, "R"), (3, 7, "R"), (3, 5, "C"), (4, 5, "R"), (4, 6, "R"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv")
    args = ap.parse_args()

    rows = []
    for m, n, field in GRID:
        mu_bar, mu, free, _ = estimate_constants(m, n, field, args.budget, args.seed)
        rows.append({
            "n": n, "m": m, "field": field,
            "mu_bar": f"{mu_bar:.6f}", "mu": f"{mu:.6f}", "gap": f"{mu - mu_bar:.2e}",
            "welch": f"{free.welch:.6f}",
            "orthoplex": "" if free.orthoplex is None else f"{free.orthoplex:.6f}",
        })
        print(" ".join(f"{k}={v}" for k, v in rows[-1].items()), flush=True)

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    sys.exit(main())
