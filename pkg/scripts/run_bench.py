"""Time tree construction and the DP on the series/parallel/K+S family.

    python3 scripts/run_bench.py --sizes 1024,2048,4096,8192 --csv bench.csv
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from maxbisize.cli import bench_rows


@dataclass
class BenchConfig:
    family: str = "spks"
    sizes: list = field(default_factory=lambda: [2**10, 2**11, 2**12, 2**13])
    repeats: int = 3
    csv_path: str | None = None
    ratio_limit: float = 5.0  # allowed dp time growth per doubling


def run(cfg: BenchConfig) -> int:
    rows = []
    out = open(cfg.csv_path, "w", newline="") if cfg.csv_path else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["family", "n", "m", "build_ms", "dp_ms", "|D|"])
        for row in bench_rows(cfg.family, cfg.sizes, repeats=cfg.repeats):
            writer.writerow(row)
            out.flush()
            rows.append(row)
    finally:
        if out is not sys.stdout:
            out.close()
    ratios = [b[4] / a[4] for a, b in zip(rows, rows[1:])]
    print("dp ratios per step: " + ", ".join(f"{r:.2f}" for r in ratios), file=sys.stderr)
    return 0 if all(r <= cfg.ratio_limit for r in ratios) else 1


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--family", default=BenchConfig.family, choices=["spks", "copath"])
    p.add_argument("--sizes", default=None, help="comma-separated vertex counts")
    p.add_argument("--repeats", type=int, default=BenchConfig.repeats)
    p.add_argument("--csv", default=None)
    a = p.parse_args()
    cfg = BenchConfig(family=a.family, repeats=a.repeats, csv_path=a.csv)
    if a.sizes:
        cfg.sizes = [int(s) for s in a.sizes.split(",")]
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
