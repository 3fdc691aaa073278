"""Freezes oracle configuration scans for every corpus graph with at most 14
vertices into one JSON file keyed by path relative to the corpus.

    python3 freeze_small.py corpus > tests/data/small_reports.json
"""

import json
import pathlib
import sys

import oracle


def main():
    root = pathlib.Path(sys.argv[1])
    out = {}
    for path in sorted(root.rglob("*.json")):
        n, rot, adj, outer = oracle.load(path)
        if n <= 14:
            out[str(path.relative_to(root))] = oracle.scan(n, rot, adj, outer)
    json.dump(out, sys.stdout, indent=0, sort_keys=True)
    print()


if __name__ == "__main__":
    main()
