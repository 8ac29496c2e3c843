#!/usr/bin/env python3
"""Baboon case study: lead-difference grids for two time segments.

Expects data/baboons/ID1.csv .. ID16.csv (see data/README.md): 600 rows
of normalized 2-D positions per individual, one row per second. Writes
one plot-ready CSV grid per segment via the lead CLI command.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dtwsearch.cli import main as cli_main

SEGMENTS = (("first100s", 1, 100), ("last500s", 101, 600))


def main() -> int:
    data = Path(__file__).resolve().parents[1] / "data" / "baboons"
    if len(list(data.glob("ID*.csv"))) != 16:
        print(f"expected 16 ID*.csv fixtures under {data} (see data/README.md)")
        return 1
    out_dir = Path("results")
    out_dir.mkdir(exist_ok=True)
    for name, lo, hi in SEGMENTS:
        out = out_dir / f"baboon_lead_{name}.csv"
        rc = cli_main([
            "lead", "--dir", str(data), "--window", "60", "--k", "1000",
            "--from", str(lo), "--to", str(hi), "--out", str(out),
        ])
        if rc != 0:
            return rc
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
