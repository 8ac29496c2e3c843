"""Command-line surface: file ingestion, search/topk/simulate/evaluate/lead,
and the benchmark sweep harness. The only module with side effects.

Commands write their artifacts and exit 0, or print a machine-readable
error JSON to stderr and exit nonzero. All randomness flows from the
user-visible --seed values, so identical invocations produce identical
artifacts (runtime fields aside).
"""
from __future__ import annotations

import argparse
import dataclasses
import itertools
import json
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import (
    DtwSearchError,
    EmptyFile,
    InvalidSpec,
    NonFiniteValue,
    ParseError,
    RaggedRows,
    TimeSeries,
    WindowPair,
)
from .bounds import compute_bounds
from .dtw import default_band_radius
from .evaluation import lead_difference, score_intervals
from .metrics import distance_matrix
from .search import (
    SearchOptions,
    brute_force_search,
    infer_most_similar,
    result_to_json_dict,
    top_k_search,
    topk_to_json_list,
)
from .simgen import GroundTruth, SimulationSpec, generate_pair

BENCH_METHODS = ("bruteforce", "sakoe_chiba", "sp", "sp_sakoe_chiba")


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one CLI invocation."""

    command: str
    inputs: tuple = ()
    outputs: tuple = ()
    window_a: int | None = None
    window_b: int | None = None
    normalize: str = "none"
    band_radius: int | None = None
    k: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in ("search", "topk", "simulate", "evaluate", "lead", "bench"):
            raise InvalidSpec(f"unknown command {self.command!r}")
        for path in self.inputs:
            if not Path(path).exists():
                raise InvalidSpec(f"input path does not exist: {path}")
        for path in self.outputs:
            parent = Path(path).resolve().parent
            if not parent.is_dir():
                raise InvalidSpec(f"output directory does not exist: {parent}")


def ingest_csv(path) -> TimeSeries:
    """Parse a CSV of rows=time steps, columns=dimensions.

    A single non-numeric first row is treated as a header. Ragged rows
    and non-finite values are rejected with the offending line cited.
    """
    text = Path(path).read_text()
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip() == "":
            continue
        rows.append((lineno, [cell.strip() for cell in line.split(",")]))
    if not rows:
        raise EmptyFile(f"{path}: no data rows")

    def as_floats(cells):
        try:
            return [float(c) for c in cells]
        except ValueError:
            return None

    if as_floats(rows[0][1]) is None:
        rows = rows[1:]
        if not rows:
            raise EmptyFile(f"{path}: header but no data rows")

    width = len(rows[0][1])
    data = np.empty((len(rows), width))
    for r, (lineno, cells) in enumerate(rows):
        if len(cells) != width:
            raise RaggedRows(f"{path}:{lineno}: expected {width} columns, got {len(cells)}")
        for c, cell in enumerate(cells):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: column {c + 1}: not a number: {cell!r}") from None
            if not np.isfinite(v):
                raise NonFiniteValue(f"{path}:{lineno}: column {c + 1}: non-finite value {cell!r}")
            data[r, c] = v
    return TimeSeries(values=data)


def emit_csv(ts: TimeSeries, path):
    """Write a series as CSV with full round-trip precision."""
    lines = [",".join(repr(float(v)) for v in row) for row in ts.values]
    Path(path).write_text("\n".join(lines) + "\n")


def _write_json(obj, path):
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _write_grid_csv(grid: np.ndarray, path, comments=()):
    lines = [f"# {c}" for c in comments]
    lines += [",".join(repr(float(v)) for v in row) for row in grid]
    Path(path).write_text("\n".join(lines) + "\n")


def _search_options(cfg: RunConfig, exclusion: int = 0) -> SearchOptions:
    return SearchOptions(
        normalize=cfg.normalize, band_radius=cfg.band_radius, exclusion=exclusion
    )


def run_search(cfg: RunConfig) -> int:
    a_path, b_path = cfg.inputs
    u = ingest_csv(a_path)
    w = ingest_csv(b_path)
    wp = WindowPair(omega_u=cfg.window_a, omega_w=cfg.window_b)
    result = infer_most_similar(u, w, wp, _search_options(cfg))
    _write_json(result_to_json_dict(result), cfg.outputs[0])
    dump_prefix = cfg.extra.get("dump_bounds")
    if dump_prefix:
        _dump_bounds(u, w, wp, cfg, dump_prefix)
    return 0


def _dump_bounds(u, w, wp, cfg: RunConfig, prefix):
    from .search import _prepare  # shares the exact swap/normalize pipeline

    opts = _search_options(cfg)
    su, sw, wu, ww, swapped = _prepare(u, w, wp, opts)
    m = distance_matrix(su, sw)
    bm = compute_bounds(m, wu, ww, band_safe=cfg.band_radius is not None)
    note = "series were swapped (omega_b > omega_a): rows index --b, cols index --a" if swapped else "rows index --a, cols index --b"
    for name, grid in (("minpath", bm.min_path), ("maxpath", bm.max_path)):
        _write_grid_csv(
            grid,
            f"{prefix}.{name}.csv",
            comments=(
                f"{name}: row r, col c (1-based) = placement start pair (r, c)",
                note,
            ),
        )


def run_topk(cfg: RunConfig) -> int:
    a_path, b_path = cfg.inputs
    u = ingest_csv(a_path)
    w = ingest_csv(b_path)
    wp = WindowPair(omega_u=cfg.window_a, omega_w=cfg.window_b)
    result = top_k_search(u, w, wp, cfg.k, _search_options(cfg, exclusion=cfg.extra.get("exclusion", 0)))
    if result.truncated:
        print(f"warning: fewer than k={cfg.k} matches exist; returning {len(result.matches)}", file=sys.stderr)
    _write_json(topk_to_json_list(result), cfg.outputs[0])
    return 0


def run_simulate(cfg: RunConfig) -> int:
    e = cfg.extra
    spec = SimulationSpec(
        length_u=e["len_a"],
        length_w=e["len_b"],
        motif_len_u=e["motif_a"],
        motif_len_w=e["motif_b"],
        delay=e["delay"],
        gamma=e["gamma"],
        seed=cfg.seed,
        dims=e.get("dims", 1),
    )
    u, w, gt = generate_pair(spec)
    out_a, out_b, out_gt = cfg.outputs
    emit_csv(u, out_a)
    emit_csv(w, out_b)
    _write_json(
        {
            "interval_u": list(gt.interval_u),
            "interval_w": list(gt.interval_w),
            "spec": dataclasses.asdict(spec),
        },
        out_gt,
    )
    return 0


def _intervals_from_pred(pred: dict):
    if "interval_u" in pred and "interval_w" in pred:
        return tuple(pred["interval_u"]), tuple(pred["interval_w"])
    if "solutions" in pred:
        sols = sorted((s["a"], s["b"]) for s in pred["solutions"])
        if not sols:
            raise InvalidSpec("prediction JSON has an empty solution list")
        a, b = sols[0]
        wa, wb = pred["window_a"], pred["window_b"]
        return (a, a + wa - 1), (b, b + wb - 1)
    raise InvalidSpec("prediction JSON must carry intervals or a search result")


def run_evaluate(cfg: RunConfig) -> int:
    pred = json.loads(Path(cfg.inputs[0]).read_text())
    gt_doc = json.loads(Path(cfg.inputs[1]).read_text())
    pred_u, pred_w = _intervals_from_pred(pred)
    gt = GroundTruth(interval_u=tuple(gt_doc["interval_u"]), interval_w=tuple(gt_doc["interval_w"]))
    counts = score_intervals(pred_u, pred_w, gt)
    _write_json(
        {
            "tp": counts.tp,
            "fp": counts.fp,
            "fn": counts.fn,
            "precision": counts.precision,
            "recall": counts.recall,
            "f1": counts.f1,
        },
        cfg.outputs[0],
    )
    return 0


def run_lead(cfg: RunConfig) -> int:
    e = cfg.extra
    directory = Path(cfg.inputs[0])
    files = sorted(p for p in directory.iterdir() if p.suffix == ".csv")
    if not files:
        raise EmptyFile(f"{directory}: no CSV files")
    ids = [p.stem for p in files]
    lo, hi = e["from_step"], e["to_step"]
    if not 1 <= lo <= hi:
        raise InvalidSpec(f"--from/--to must satisfy 1 <= from <= to, got ({lo},{hi})")
    series = {}
    for p, sid in zip(files, ids):
        ts = ingest_csv(p)
        if hi > ts.length:
            raise InvalidSpec(f"{p}: --to {hi} exceeds series length {ts.length}")
        series[sid] = TimeSeries(values=ts.values[lo - 1 : hi])

    wp = WindowPair(omega_u=e["window"], omega_w=e["window"])
    opts = SearchOptions(normalize=cfg.normalize)
    matches_by_pair = {}
    for i, j in itertools.combinations(range(len(ids)), 2):
        res = top_k_search(series[ids[i]], series[ids[j]], wp, cfg.k, opts)
        pairs = [(m.a, m.b) for m in res.matches]
        matches_by_pair[(ids[i], ids[j])] = pairs
        matches_by_pair[(ids[j], ids[i])] = [(b, a) for a, b in pairs]
    cells = lead_difference(matches_by_pair)

    lines = ["leader," + ",".join(ids)]
    for li in ids:
        row = [li]
        for fj in ids:
            row.append("0" if li == fj else str(cells[(li, fj)].difference))
        lines.append(",".join(row))
    Path(cfg.outputs[0]).write_text("\n".join(lines) + "\n")
    return 0


def _bench_callable(method: str, radius: int):
    if method == "bruteforce":
        return lambda u, w, wp: brute_force_search(u, w, wp)
    if method == "sakoe_chiba":
        return lambda u, w, wp: brute_force_search(u, w, wp, SearchOptions(band_radius=radius))
    if method == "sp":
        return lambda u, w, wp: infer_most_similar(u, w, wp)
    if method == "sp_sakoe_chiba":
        return lambda u, w, wp: infer_most_similar(u, w, wp, SearchOptions(band_radius=radius))
    raise InvalidSpec(f"unknown bench method {method!r}; choose from {', '.join(BENCH_METHODS)}")


def _parse_window_token(token: str):
    if "x" in token:
        wa, wb = token.split("x", 1)
        return int(wa), int(wb)
    w = int(token)
    return w, w


def run_bench(cfg: RunConfig) -> int:
    e = cfg.extra
    lengths = [int(t) for t in e["lengths"]]
    windows = [_parse_window_token(t) for t in e["windows"]]
    gammas = [float(t) for t in e["gammas"]]
    methods = list(e["methods"])
    seeds = [int(t) for t in e["seeds"]]
    warmup, reps = e["warmup"], e["reps"]
    for method in methods:
        if method not in BENCH_METHODS:
            raise InvalidSpec(f"unknown bench method {method!r}; choose from {', '.join(BENCH_METHODS)}")

    header = (
        "method,length,window_a,window_b,gamma,seed,band_radius,"
        "pairs_total,pairs_after_prune,dtw_evaluations,runtime_ms"
    )
    lines = [header]
    for length, (wa, wb), gamma, seed in itertools.product(lengths, windows, gammas, seeds):
        spec = SimulationSpec(
            length_u=length, length_w=length, motif_len_u=wa, motif_len_w=wb,
            gamma=gamma, seed=seed,
        )
        u, w, gt = generate_pair(spec)
        wp = WindowPair(omega_u=wa, omega_w=wb)
        radius = cfg.band_radius or default_band_radius(wa, wb)
        for method in methods:
            fn = _bench_callable(method, radius)
            for _ in range(warmup):
                fn(u, w, wp)
            times = []
            result = None
            for _ in range(reps):
                result = fn(u, w, wp)
                times.append(result.stats.runtime_ms)
            banded = method in ("sakoe_chiba", "sp_sakoe_chiba")
            lines.append(
                ",".join(
                    str(v)
                    for v in (
                        method, length, wa, wb, gamma, seed,
                        radius if banded else "",
                        result.stats.pairs_total,
                        result.stats.pairs_after_prune,
                        result.stats.dtw_evaluations,
                        statistics.median(times),
                    )
                )
            )
    Path(cfg.outputs[0]).write_text("\n".join(lines) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtwsearch",
        description="Exact most-similar-subsequence search between two time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_query_flags(p):
        p.add_argument("--a", required=True, help="CSV of the first series")
        p.add_argument("--b", required=True, help="CSV of the second series")
        p.add_argument("--wa", required=True, type=int, help="window length on the first series")
        p.add_argument("--wb", required=True, type=int, help="window length on the second series")
        p.add_argument("--normalize", choices=("zscore", "none"), default="none")
        p.add_argument("--band", type=int, default=None, help="Sakoe-Chiba band radius (omit for exact DTW)")

    p = sub.add_parser("search", help="find the most similar subsequence pair")
    add_query_flags(p)
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--dump-bounds", default=None, metavar="PREFIX",
                   help="also write PREFIX.minpath.csv / PREFIX.maxpath.csv")

    p = sub.add_parser("topk", help="rank the k most similar subsequence pairs")
    add_query_flags(p)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--exclusion", type=int, default=0,
                   help="suppress matches within this Chebyshev start distance of a ranked match")
    p.add_argument("--out", required=True, help="output JSON path")

    p = sub.add_parser("simulate", help="generate a series pair with a planted motif")
    p.add_argument("--len-a", required=True, type=int)
    p.add_argument("--len-b", required=True, type=int)
    p.add_argument("--motif-a", type=int, default=60)
    p.add_argument("--motif-b", type=int, default=80)
    p.add_argument("--delay", type=int, default=20)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", type=int, default=1)
    p.add_argument("--out-a", required=True)
    p.add_argument("--out-b", required=True)
    p.add_argument("--out-gt", required=True)

    p = sub.add_parser("evaluate", help="score a prediction against ground truth")
    p.add_argument("--pred", required=True, help="search-result JSON or {interval_u, interval_w} JSON")
    p.add_argument("--gt", required=True, help="ground-truth JSON from simulate")
    p.add_argument("--out", required=True)

    p = sub.add_parser("lead", help="lead-difference grid over a directory of per-individual CSVs")
    p.add_argument("--dir", required=True)
    p.add_argument("--window", required=True, type=int)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--from", dest="from_step", required=True, type=int)
    p.add_argument("--to", dest="to_step", required=True, type=int)
    p.add_argument("--normalize", choices=("zscore", "none"), default="none")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="runtime/counter sweep over methods and settings")
    p.add_argument("--lengths", required=True, help="comma list, e.g. 500,1000,2000")
    p.add_argument("--windows", required=True, help="comma list of W or WAxWB, e.g. 60x80,40")
    p.add_argument("--gammas", required=True, help="comma list, e.g. 0.0,0.1")
    p.add_argument("--methods", required=True, help=f"comma list from: {','.join(BENCH_METHODS)}")
    p.add_argument("--seeds", required=True, help="comma list, e.g. 0,1,2")
    p.add_argument("--band", type=int, default=None, help="band radius for the banded methods")
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--out", required=True)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    c = args.command
    if c == "search":
        return RunConfig(
            command=c, inputs=(args.a, args.b), outputs=(args.out,),
            window_a=args.wa, window_b=args.wb, normalize=args.normalize,
            band_radius=args.band, extra={"dump_bounds": args.dump_bounds},
        )
    if c == "topk":
        return RunConfig(
            command=c, inputs=(args.a, args.b), outputs=(args.out,),
            window_a=args.wa, window_b=args.wb, normalize=args.normalize,
            band_radius=args.band, k=args.k, extra={"exclusion": args.exclusion},
        )
    if c == "simulate":
        return RunConfig(
            command=c, outputs=(args.out_a, args.out_b, args.out_gt), seed=args.seed,
            extra={
                "len_a": args.len_a, "len_b": args.len_b,
                "motif_a": args.motif_a, "motif_b": args.motif_b,
                "delay": args.delay, "gamma": args.gamma, "dims": args.dims,
            },
        )
    if c == "evaluate":
        return RunConfig(command=c, inputs=(args.pred, args.gt), outputs=(args.out,))
    if c == "lead":
        return RunConfig(
            command=c, inputs=(args.dir,), outputs=(args.out,), k=args.k,
            normalize=args.normalize,
            extra={"window": args.window, "from_step": args.from_step, "to_step": args.to_step},
        )
    if c == "bench":
        return RunConfig(
            command=c, outputs=(args.out,), band_radius=args.band,
            extra={
                "lengths": args.lengths.split(","), "windows": args.windows.split(","),
                "gammas": args.gammas.split(","), "methods": args.methods.split(","),
                "seeds": args.seeds.split(","), "warmup": args.warmup, "reps": args.reps,
            },
        )
    raise InvalidSpec(f"unknown command {c!r}")


_RUNNERS = {
    "search": run_search,
    "topk": run_topk,
    "simulate": run_simulate,
    "evaluate": run_evaluate,
    "lead": run_lead,
    "bench": run_bench,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _RUNNERS[cfg.command](cfg)
    except (DtwSearchError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
