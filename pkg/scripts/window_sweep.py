#!/usr/bin/env python3
"""Runtime vs. equal window size at a fixed series length."""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dtwsearch.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", default="2000")
    ap.add_argument("--windows", default="40,80,120,200")
    ap.add_argument("--seeds", default="0,1,2")
    ap.add_argument("--gamma", default="0.1")
    ap.add_argument("--out", default="results/window_sweep.csv")
    args = ap.parse_args()
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    return cli_main([
        "bench",
        "--lengths", args.length,
        "--windows", args.windows,
        "--gammas", args.gamma,
        "--methods", "bruteforce,sakoe_chiba,sp,sp_sakoe_chiba",
        "--seeds", args.seeds,
        "--out", args.out,
    ])


if __name__ == "__main__":
    raise SystemExit(main())
