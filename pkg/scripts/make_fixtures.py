#!/usr/bin/env python3
"""Write the fixture corpus (nets plus expected statecharts) to a directory.

Example:
    python scripts/make_fixtures.py -o fixtures/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pn2sc.generate import generate_known_corpus
from pn2sc.io import petri_net_to_bytes, statechart_document_to_bytes


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-o", "--output", default="fixtures",
                        help="target directory (created if missing)")
    args = parser.parse_args()

    target = Path(args.output)
    target.mkdir(parents=True, exist_ok=True)
    for fx in generate_known_corpus():
        (target / f"{fx.name}.net.json").write_bytes(
            petri_net_to_bytes(fx.net)
        )
        if fx.expected is None:
            print(f"{fx.name}: net written (expected outcome: irreducible)")
            continue
        (target / f"{fx.name}.statechart.json").write_bytes(
            statechart_document_to_bytes(fx.expected)
        )
        print(f"{fx.name}: net and expected statechart written")
    return 0


if __name__ == "__main__":
    sys.exit(main())
