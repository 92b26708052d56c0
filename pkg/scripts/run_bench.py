#!/usr/bin/env python3
"""Time the transformation across net sizes and save the rows as JSON.

Example:
    python scripts/run_bench.py --sizes 5000,10000,40000 --reps 3 -o bench.json
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pn2sc.cli import run_bench


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="5000,10000,40000")
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--output", help="also write the JSON rows here")
    args = parser.parse_args()

    sizes = [int(part) for part in args.sizes.split(",") if part]
    rows = run_bench(sizes, args.reps, args.seed)
    print(f"{'size':>8}  {'init_ms':>10}  {'reduce_ms':>10}  {'total_ms':>10}")
    for row in rows:
        print(f"{row['size']:>8}  {row['init_ms']:>10.1f}  "
              f"{row['reduce_ms']:>10.1f}  {row['total_ms']:>10.1f}")
    if args.output:
        Path(args.output).write_text(json.dumps(rows, indent=2) + "\n")
        print(f"rows written to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
