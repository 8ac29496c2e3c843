#!/usr/bin/env python3
"""Stock case study: most similar 90-day windows between z-normalized
2020 daily closes of a related-sector pair vs. an unrelated-sector pair.

Expects data/stocks/{NVDA,VSH,TSN}.csv (see data/README.md).
"""
import itertools
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dtwsearch import SearchOptions, WindowPair, infer_most_similar
from dtwsearch.cli import ingest_csv
from dtwsearch.search import result_to_json_dict

STOCKS = ("NVDA", "VSH", "TSN")


def main() -> int:
    data = Path(__file__).resolve().parents[1] / "data" / "stocks"
    paths = {name: data / f"{name}.csv" for name in STOCKS}
    missing = [str(p) for p in paths.values() if not p.exists()]
    if missing:
        print("missing fixtures (see data/README.md):", *missing, sep="\n  ")
        return 1
    series = {name: ingest_csv(p) for name, p in paths.items()}
    opts = SearchOptions(normalize="zscore")
    out_dir = Path("results")
    out_dir.mkdir(exist_ok=True)
    for a, b in itertools.combinations(STOCKS, 2):
        res = infer_most_similar(series[a], series[b], WindowPair(90, 90), opts)
        (out_dir / f"stock_{a}_{b}.json").write_text(
            json.dumps(result_to_json_dict(res), indent=2) + "\n"
        )
        print(f"{a} vs {b}: distance {res.shortest_dist:.3f} at {sorted(res.solutions)[0]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
