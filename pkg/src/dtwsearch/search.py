"""Pruned search for the most similar subsequence pair, top-k, brute force.

The pruned search evaluates exact DTW only on placements whose lower
bound does not exceed the global minimum of the upper-bound grid, in
ascending lower-bound order, and stops at the first candidate whose lower
bound exceeds the best distance found. Because the lower bound never
overshoots the true distance and the upper bound never undershoots it,
the result provably equals the brute-force answer, tie-set included.

Candidates are evaluated in growing chunks through the vectorized batch
evaluator. Chunking can evaluate a few candidates past the sequential
stopping point; that affects only the dtw_evaluations counter, never the
returned solutions, because tie membership is resolved against the final
minimum with the shared tolerance.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import (
    TIE_TOLERANCE,
    CandidatePair,
    InvalidSpec,
    SearchResult,
    SearchStats,
    TimeSeries,
    WindowPair,
    validate_query,
)
from .bounds import BoundMatrices, compute_bounds
from .dtw import dtw_batch, dtw_matrix_full
from .metrics import distance_matrix, z_normalize

_FIRST_CHUNK = 64
_MAX_CHUNK = 4096


@dataclass(frozen=True)
class SearchOptions:
    """Knobs shared by all search entry points.

    normalize: "none" or "zscore" (whole-series z-score per dimension).
    band_radius: None for exact DTW, or a radius >= 1 for the
        slope-adjusted band constraint. With a band, the returned optimum
        is exact for the banded distance, not the unconstrained one.
    exclusion: top-k only; suppress matches within this Chebyshev distance
        of an already-ranked match (0 keeps every placement competing).
    """

    normalize: str = "none"
    band_radius: int | None = None
    tie_tolerance: float = TIE_TOLERANCE
    early_exit: bool = True
    exclusion: int = 0

    def __post_init__(self):
        if self.normalize not in ("none", "zscore"):
            raise InvalidSpec(f"normalize must be 'none' or 'zscore', got {self.normalize!r}")
        if self.band_radius is not None and (
            not isinstance(self.band_radius, (int, np.integer)) or self.band_radius < 1
        ):
            raise InvalidSpec(f"band_radius must be None or an integer >= 1, got {self.band_radius!r}")
        if self.tie_tolerance < 0:
            raise InvalidSpec("tie_tolerance must be nonnegative")
        if self.exclusion < 0:
            raise InvalidSpec("exclusion must be nonnegative")


@dataclass(frozen=True)
class RankedMatch:
    """One entry of a top-k ranking; rank is 1-based, ascending distance."""

    a: int
    b: int
    distance: float
    rank: int


@dataclass(frozen=True)
class TopKResult:
    matches: tuple
    truncated: bool
    stats: SearchStats


class Candidates(Sequence):
    """Placements surviving the bound prune, ascending by lower bound.

    Backed by flat arrays; indexing materializes CandidatePair objects.
    Start indices are 1-based.
    """

    __slots__ = ("a", "b", "lower_bounds")

    def __init__(self, a: np.ndarray, b: np.ndarray, lower_bounds: np.ndarray):
        self.a = np.ascontiguousarray(a, dtype=np.int64)
        self.b = np.ascontiguousarray(b, dtype=np.int64)
        self.lower_bounds = np.ascontiguousarray(lower_bounds, dtype=np.float64)
        for arr in (self.a, self.b, self.lower_bounds):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return self.a.size

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return [self[i] for i in range(*idx.indices(len(self)))]
        return CandidatePair(
            a=int(self.a[idx]), b=int(self.b[idx]), lower_bound=float(self.lower_bounds[idx])
        )


def find_candidates(
    bm: BoundMatrices, *, threshold: float | None = None, tie_tolerance: float = TIE_TOLERANCE
) -> Candidates:
    """Placements whose lower bound does not exceed the prune threshold.

    The default threshold is the minimum of the upper-bound grid. The
    comparison is padded by the tie tolerance so summation rounding can
    never drop a genuinely tied optimum. Sorted ascending by lower bound,
    ties by (a, b).
    """
    thr = bm.min_of_max_path if threshold is None else threshold
    mask = bm.min_path <= thr + tie_tolerance
    ii, jj = np.nonzero(mask)
    lbs = bm.min_path[ii, jj]
    order = np.lexsort((jj, ii, lbs))
    return Candidates(a=ii[order] + 1, b=jj[order] + 1, lower_bounds=lbs[order])


def find_optimal_solutions(
    m,
    omega_u: int,
    omega_w: int,
    candidates: Candidates,
    min_path: np.ndarray,
    *,
    tie_tolerance: float = TIE_TOLERANCE,
    early_exit: bool = True,
    band_radius: int | None = None,
) -> SearchResult:
    """Evaluate candidates in lower-bound order, keeping the best tie-set.

    Stops at the first candidate whose lower bound exceeds the incumbent
    distance (plus tolerance); with early_exit=False every candidate is
    evaluated, which must not change the answer.
    """
    t0 = time.perf_counter()
    ncand = len(candidates)
    assert ncand > 0, "candidate list cannot be empty: the argmin of the upper bound always survives"
    lbs = candidates.lower_bounds
    a0 = candidates.a - 1
    b0 = candidates.b - 1

    shortest = np.inf
    kept: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
    evals = 0
    pos = 0
    chunk = _FIRST_CHUNK
    while pos < ncand:
        if early_exit and lbs[pos] > shortest + tie_tolerance:
            break
        end = min(pos + chunk, ncand)
        if early_exit and np.isfinite(shortest):
            end = pos + int(np.searchsorted(lbs[pos:end], shortest + tie_tolerance, side="right"))
        d = dtw_batch(m, omega_u, omega_w, a0[pos:end], b0[pos:end], radius=band_radius)
        evals += end - pos
        cmin = float(d.min())
        if cmin < shortest:
            shortest = cmin
        keep = d <= shortest + tie_tolerance
        if np.any(keep):
            kept.append((d[keep], candidates.a[pos:end][keep], candidates.b[pos:end][keep]))
        pos = end
        chunk = min(chunk * 4, _MAX_CHUNK)

    d_all = np.concatenate([k[0] for k in kept])
    a_all = np.concatenate([k[1] for k in kept])
    b_all = np.concatenate([k[2] for k in kept])
    final = d_all <= shortest + tie_tolerance
    solutions = frozenset(zip(a_all[final].tolist(), b_all[final].tolist()))
    stats = SearchStats(
        pairs_total=int(min_path.size),
        pairs_after_prune=ncand,
        dtw_evaluations=evals,
        runtime_ms=(time.perf_counter() - t0) * 1e3,
    )
    return SearchResult(
        solutions=solutions,
        shortest_dist=float(shortest),
        swapped=False,
        stats=stats,
        window_a=omega_u,
        window_b=omega_w,
        band_radius=band_radius,
    )


def _prepare(u: TimeSeries, w: TimeSeries, wp: WindowPair, opts: SearchOptions):
    """Validate, normalize, and apply the swap that enforces wu >= ww."""
    validate_query(u, w, wp)
    if opts.normalize == "zscore":
        u = z_normalize(u)
        w = z_normalize(w)
    swapped = wp.omega_w > wp.omega_u
    if swapped:
        return w, u, wp.omega_w, wp.omega_u, True
    return u, w, wp.omega_u, wp.omega_w, False


def infer_most_similar(
    u: TimeSeries, w: TimeSeries, wp: WindowPair, options: SearchOptions | None = None
) -> SearchResult:
    """Find every placement pair attaining the minimum windowed DTW.

    Runs the full pipeline: distance matrix, bound grids, candidate
    filter, ordered incumbent search. Solutions are reported in the
    caller's orientation even when the series were swapped internally.
    """
    opts = options or SearchOptions()
    t0 = time.perf_counter()
    su, sw, wu, ww, swapped = _prepare(u, w, wp, opts)
    m = distance_matrix(su, sw)
    bm = compute_bounds(m, wu, ww, band_safe=opts.band_radius is not None)
    cands = find_candidates(bm, tie_tolerance=opts.tie_tolerance)
    res = find_optimal_solutions(
        m.entries,
        wu,
        ww,
        cands,
        bm.min_path,
        tie_tolerance=opts.tie_tolerance,
        early_exit=opts.early_exit,
        band_radius=opts.band_radius,
    )
    solutions = res.solutions
    if swapped:
        solutions = frozenset((b, a) for a, b in solutions)
    stats = replace(res.stats, runtime_ms=(time.perf_counter() - t0) * 1e3)
    return SearchResult(
        solutions=solutions,
        shortest_dist=res.shortest_dist,
        swapped=swapped,
        stats=stats,
        window_a=wp.omega_u,
        window_b=wp.omega_w,
        normalized=opts.normalize == "zscore",
        band_radius=opts.band_radius,
    )


def brute_force_search(
    u: TimeSeries,
    w: TimeSeries,
    wp: WindowPair,
    options: SearchOptions | None = None,
    *,
    return_table=False,
):
    """Evaluate every placement; the oracle the pruned search must match.

    With return_table=True also returns the full placement-by-placement
    distance grid, oriented as (start in u) x (start in w).
    """
    opts = options or SearchOptions()
    t0 = time.perf_counter()
    su, sw, wu, ww, swapped = _prepare(u, w, wp, opts)
    m = distance_matrix(su, sw)
    table = dtw_matrix_full(m.entries, wu, ww, radius=opts.band_radius)
    shortest = float(table.min())
    ii, jj = np.nonzero(table <= shortest + opts.tie_tolerance)
    if swapped:
        solutions = frozenset(zip((jj + 1).tolist(), (ii + 1).tolist()))
        table = table.T
    else:
        solutions = frozenset(zip((ii + 1).tolist(), (jj + 1).tolist()))
    total = int(table.size)
    stats = SearchStats(
        pairs_total=total,
        pairs_after_prune=total,
        dtw_evaluations=total,
        runtime_ms=(time.perf_counter() - t0) * 1e3,
    )
    result = SearchResult(
        solutions=solutions,
        shortest_dist=shortest,
        swapped=swapped,
        stats=stats,
        window_a=wp.omega_u,
        window_b=wp.omega_w,
        normalized=opts.normalize == "zscore",
        band_radius=opts.band_radius,
    )
    if return_table:
        return result, table
    return result


def _kth_smallest(values: np.ndarray, k: int) -> float:
    return float(np.partition(values.ravel(), k - 1)[k - 1])


def top_k_search(
    u: TimeSeries, w: TimeSeries, wp: WindowPair, k: int, options: SearchOptions | None = None
) -> TopKResult:
    """Exact k smallest windowed-DTW placements, ascending.

    Generalizes the single-optimum prune: a placement is discarded only
    when its lower bound exceeds the current k-th smallest verified
    distance, initialized with the k-th smallest upper bound. Ties are
    ordered lexicographically by (a, b). Asking for more matches than
    placements is not an error: the result is truncated and flagged.

    With exclusion > 0, matches within the given Chebyshev distance of an
    already-accepted match are suppressed; the evaluated prefix is grown
    until k survivors exist or placements run out.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidSpec(f"k must be a positive integer, got {k!r}")
    opts = options or SearchOptions()
    t0 = time.perf_counter()
    su, sw, wu, ww, swapped = _prepare(u, w, wp, opts)
    m = distance_matrix(su, sw)
    bm = compute_bounds(m, wu, ww, band_safe=opts.band_radius is not None)
    total = int(bm.min_path.size)
    k_eff = min(int(k), total)
    truncated = k > total
    tol = opts.tie_tolerance

    kk = k_eff
    cands = find_candidates(bm, threshold=_kth_smallest(bm.max_path, kk), tie_tolerance=tol)
    pos = 0
    evals = 0
    chunk = _FIRST_CHUNK
    d_parts: list[np.ndarray] = []
    a_parts: list[np.ndarray] = []
    b_parts: list[np.ndarray] = []
    n_seen = 0

    while True:
        thr0 = _kth_smallest(bm.max_path, kk)
        kth = thr0
        if n_seen >= kk:
            kth = min(kth, _kth_smallest(np.concatenate(d_parts), kk))
        while pos < len(cands):
            if cands.lower_bounds[pos] > kth + tol:
                break
            end = min(pos + chunk, len(cands))
            end = pos + int(
                np.searchsorted(cands.lower_bounds[pos:end], kth + tol, side="right")
            )
            d = dtw_batch(
                m.entries, wu, ww, cands.a[pos:end] - 1, cands.b[pos:end] - 1, radius=opts.band_radius
            )
            evals += end - pos
            n_seen += end - pos
            d_parts.append(d)
            a_parts.append(cands.a[pos:end])
            b_parts.append(cands.b[pos:end])
            if n_seen >= kk:
                kth = min(thr0, _kth_smallest(np.concatenate(d_parts), kk))
            pos = end
            chunk = min(chunk * 4, _MAX_CHUNK)

        d_all = np.concatenate(d_parts)
        a_all = np.concatenate(a_parts)
        b_all = np.concatenate(b_parts)
        if swapped:
            a_all, b_all = b_all, a_all
        # Every placement with distance <= kth was evaluated, so selecting
        # from this prefix is exact.
        prefix = d_all <= kth + tol
        order = np.lexsort((b_all[prefix], a_all[prefix], d_all[prefix]))
        dp, ap, bp = d_all[prefix][order], a_all[prefix][order], b_all[prefix][order]

        if opts.exclusion == 0:
            sel = slice(0, k_eff)
            sel_a, sel_b, sel_d = ap[sel], bp[sel], dp[sel]
            break
        acc_a, acc_b, acc_d = [], [], []
        for ai, bi, di in zip(ap.tolist(), bp.tolist(), dp.tolist()):
            if all(max(abs(ai - xa), abs(bi - xb)) > opts.exclusion for xa, xb in zip(acc_a, acc_b)):
                acc_a.append(ai)
                acc_b.append(bi)
                acc_d.append(di)
            if len(acc_a) >= k_eff:
                break
        if len(acc_a) >= k_eff or kk >= total:
            sel_a, sel_b, sel_d = np.array(acc_a, dtype=np.int64), np.array(acc_b, dtype=np.int64), np.array(acc_d)
            truncated = truncated or len(acc_a) < k_eff
            break
        kk = min(kk * 4, total)
        new_thr = _kth_smallest(bm.max_path, kk)
        cands = find_candidates(bm, threshold=new_thr, tie_tolerance=tol)

    matches = tuple(
        RankedMatch(a=int(ai), b=int(bi), distance=float(di), rank=r + 1)
        for r, (ai, bi, di) in enumerate(zip(sel_a, sel_b, sel_d))
    )
    stats = SearchStats(
        pairs_total=total,
        pairs_after_prune=len(cands),
        dtw_evaluations=evals,
        runtime_ms=(time.perf_counter() - t0) * 1e3,
    )
    return TopKResult(matches=matches, truncated=truncated, stats=stats)


def result_to_json_dict(result: SearchResult) -> dict:
    """The documented JSON form of a search result."""
    return {
        "shortest_dist": result.shortest_dist,
        "solutions": [{"a": a, "b": b} for a, b in result.sorted_solutions()],
        "swapped": result.swapped,
        "window_a": result.window_a,
        "window_b": result.window_b,
        "normalized": result.normalized,
        "band_radius": result.band_radius,
        "stats": {
            "pairs_total": result.stats.pairs_total,
            "pairs_after_prune": result.stats.pairs_after_prune,
            "dtw_evaluations": result.stats.dtw_evaluations,
            "runtime_ms": result.stats.runtime_ms,
        },
    }


def topk_to_json_list(result: TopKResult) -> list:
    """The documented JSON form of a top-k ranking."""
    return [
        {"rank": m.rank, "a": m.a, "b": m.b, "distance": m.distance} for m in result.matches
    ]
