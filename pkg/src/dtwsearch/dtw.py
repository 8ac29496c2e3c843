"""Exact windowed DTW, its band-constrained variant, and a path oracle.

Three routes to the same quantity, each serving a different purpose:

* ``dtw_windowed`` is the production recurrence (rolling rows, O(wu*ww)
  time, O(ww) memory per evaluation).
* ``dtw_banded`` restricts warping cells to a slope-adjusted corridor
  around the straight line between window corners; its value can only be
  larger than the unconstrained one.
* ``dtw_path_oracle`` literally enumerates every warping path of a tiny
  instance and minimizes over them. It shares no code with the recurrence
  and exists to check it.

``dtw_batch`` and ``dtw_matrix_full`` evaluate many placements at once by
running the same recurrence vectorized across placements; cell-level
operation order is identical to the scalar version, so values agree
bitwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    BandInfeasible,
    IndexOutOfRange,
    InstanceTooLarge,
    InvalidSpec,
    WarpingPath,
    WindowTooLarge,
)
from .metrics import DistanceMatrix

_ORACLE_MAX_WINDOW = 8


def _entries(m) -> np.ndarray:
    if isinstance(m, DistanceMatrix):
        return m.entries
    return np.asarray(m, dtype=np.float64)


def _check_window(arr: np.ndarray, omega_u: int, omega_w: int, a0: int, b0: int):
    n, cols = arr.shape
    if omega_u < 1 or omega_w < 1:
        raise InvalidSpec(f"window lengths must be positive, got ({omega_u},{omega_w})")
    if a0 < 0 or b0 < 0 or a0 + omega_u > n or b0 + omega_w > cols:
        raise IndexOutOfRange(
            f"window ({omega_u},{omega_w}) at 1-based start ({a0 + 1},{b0 + 1}) "
            f"does not fit matrix of shape {arr.shape}"
        )


@dataclass(frozen=True)
class AccumulatedDistance:
    """Full accumulated-distance grid of one placement.

    grid[0, 0] equals the pointwise distance at the window origin and
    entries never decrease along a monotone path (all costs are
    nonnegative). origin is the 1-based (a, b) placement start.
    """

    grid: np.ndarray
    origin: tuple

    def __post_init__(self):
        arr = np.asarray(self.grid, dtype=np.float64).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "grid", arr)
        object.__setattr__(self, "origin", (int(self.origin[0]), int(self.origin[1])))


def accumulated_distance(m, omega_u: int, omega_w: int, start) -> AccumulatedDistance:
    """Materialize the full DP grid for one placement (small helper)."""
    arr = _entries(m)
    a0, b0 = start[0] - 1, start[1] - 1
    _check_window(arr, omega_u, omega_w, a0, b0)
    ad = np.empty((omega_u, omega_w))
    ad[0] = np.cumsum(arr[a0, b0 : b0 + omega_w])
    for p in range(1, omega_u):
        cost = arr[a0 + p, b0 : b0 + omega_w]
        ad[p, 0] = ad[p - 1, 0] + cost[0]
        for q in range(1, omega_w):
            ad[p, q] = min(ad[p - 1, q], ad[p - 1, q - 1], ad[p, q - 1]) + cost[q]
    return AccumulatedDistance(grid=ad, origin=(start[0], start[1]))


def dtw_windowed(m, omega_u: int, omega_w: int, start) -> float:
    """Exact windowed DTW at one placement, 1-based start (a, b).

    Keeps only two DP rows; the search evaluates this up to once per
    surviving candidate, so memory traffic matters more than the grid.
    """
    arr = _entries(m)
    a0, b0 = start[0] - 1, start[1] - 1
    _check_window(arr, omega_u, omega_w, a0, b0)
    prev = np.cumsum(arr[a0, b0 : b0 + omega_w]).tolist()
    for p in range(1, omega_u):
        cost = arr[a0 + p, b0 : b0 + omega_w].tolist()
        cur = [prev[0] + cost[0]]
        for q in range(1, omega_w):
            cur.append(min(prev[q], prev[q - 1], cur[q - 1]) + cost[q])
        prev = cur
    return float(prev[-1])


def default_band_radius(omega_u: int, omega_w: int) -> int:
    """Radius that keeps the band connected and near 10% of the window."""
    return max(math.ceil(0.1 * max(omega_u, omega_w)), abs(omega_u - omega_w), 1)


def band_column_ranges(omega_u: int, omega_w: int, radius: int):
    """Inclusive 0-based column range [lo[p], hi[p]] of each window row.

    The band is |q - p * (omega_w-1)/max(omega_u-1, 1)| <= radius in
    0-based window coordinates: a corridor of the given radius around the
    straight line joining cell (0, 0) to cell (omega_u-1, omega_w-1).
    Computed in integer arithmetic so membership is exact.
    """
    if not isinstance(radius, (int, np.integer)) or radius < 1:
        raise InvalidSpec(f"band radius must be an integer >= 1, got {radius!r}")
    d = max(omega_u - 1, 1)
    p = np.arange(omega_u, dtype=np.int64)
    cnum = p * (omega_w - 1)
    lo = np.maximum(0, -((-(cnum - radius * d)) // d))
    hi = np.minimum(omega_w - 1, (cnum + radius * d) // d)
    return lo, hi


def dtw_banded(m, omega_u: int, omega_w: int, start, radius: int) -> float:
    """Windowed DTW restricted to the slope-adjusted band.

    Always >= the unconstrained value; equal once the radius covers the
    whole grid. Raises BandInfeasible if no warping path survives the
    restriction (possible only when omega_w sufficiently exceeds omega_u).
    """
    arr = _entries(m)
    a0, b0 = start[0] - 1, start[1] - 1
    _check_window(arr, omega_u, omega_w, a0, b0)
    lo, hi = band_column_ranges(omega_u, omega_w, radius)
    inf = math.inf
    prev = [inf] * omega_w
    row0 = arr[a0, b0 : b0 + omega_w].tolist()
    acc = 0.0
    for q in range(0, int(hi[0]) + 1):
        acc = acc + row0[q]
        prev[q] = acc
    for p in range(1, omega_u):
        cost = arr[a0 + p, b0 : b0 + omega_w].tolist()
        cur = [inf] * omega_w
        for q in range(int(lo[p]), int(hi[p]) + 1):
            best = prev[q]
            if q > 0:
                if prev[q - 1] < best:
                    best = prev[q - 1]
                if cur[q - 1] < best:
                    best = cur[q - 1]
            if best < inf:
                cur[q] = best + cost[q]
        prev = cur
    result = prev[omega_w - 1]
    if not math.isfinite(result):
        raise BandInfeasible(
            f"radius {radius} band disconnects the corners of a ({omega_u},{omega_w}) window"
        )
    return float(result)


@lru_cache(maxsize=None)
def _enumerated_paths(omega_u: int, omega_w: int):
    """All warping paths of a window shape, as padded relative index arrays.

    Returns (i_idx, j_idx, mask, paths) where the arrays have one row per
    path, padded to the longest path; mask marks real steps. Path count is
    the Delannoy number of the shape, hence the small-window guard at the
    call sites.
    """
    paths = []
    step = [(0, 0)]

    def rec(i, j):
        if i == omega_u - 1 and j == omega_w - 1:
            paths.append(tuple(step))
            return
        if i + 1 < omega_u:
            step.append((i + 1, j))
            rec(i + 1, j)
            step.pop()
        if j + 1 < omega_w:
            step.append((i, j + 1))
            rec(i, j + 1)
            step.pop()
        if i + 1 < omega_u and j + 1 < omega_w:
            step.append((i + 1, j + 1))
            rec(i + 1, j + 1)
            step.pop()

    rec(0, 0)
    maxlen = max(len(p) for p in paths)
    i_idx = np.zeros((len(paths), maxlen), dtype=np.int64)
    j_idx = np.zeros((len(paths), maxlen), dtype=np.int64)
    mask = np.zeros((len(paths), maxlen), dtype=bool)
    for r, p in enumerate(paths):
        for c, (i, j) in enumerate(p):
            i_idx[r, c] = i
            j_idx[r, c] = j
            mask[r, c] = True
    return i_idx, j_idx, mask, paths


def dtw_path_oracle(m, omega_u: int, omega_w: int, start):
    """Minimum path cost by literal enumeration of every warping path.

    Independent of the DP recurrence; only usable on tiny windows (both
    sides <= 8). Returns (distance, one minimizing WarpingPath) with
    1-based absolute steps.
    """
    if omega_u > _ORACLE_MAX_WINDOW or omega_w > _ORACLE_MAX_WINDOW:
        raise InstanceTooLarge(
            f"path enumeration is limited to windows <= {_ORACLE_MAX_WINDOW}, "
            f"got ({omega_u},{omega_w})"
        )
    arr = _entries(m)
    a0, b0 = start[0] - 1, start[1] - 1
    _check_window(arr, omega_u, omega_w, a0, b0)
    i_idx, j_idx, mask, paths = _enumerated_paths(omega_u, omega_w)
    flat = arr.ravel()
    costs = flat[(a0 + i_idx) * arr.shape[1] + (b0 + j_idx)]
    sums = np.where(mask, costs, 0.0).sum(axis=1)
    k = int(np.argmin(sums))
    steps = tuple((a0 + i + 1, b0 + j + 1) for i, j in paths[k])
    return float(sums[k]), WarpingPath(steps=steps)


def _resolve_ranges(omega_u, omega_w, radius):
    if radius is None:
        lo = np.zeros(omega_u, dtype=np.int64)
        hi = np.full(omega_u, omega_w - 1, dtype=np.int64)
        return lo, hi
    return band_column_ranges(omega_u, omega_w, radius)


def dtw_batch(m, omega_u: int, omega_w: int, a0, b0, *, radius: int | None = None) -> np.ndarray:
    """Windowed DTW at many placements at once (0-based start arrays).

    Runs the rolling-row recurrence with the placement axis vectorized;
    per-cell operation order matches dtw_windowed exactly.
    """
    arr = _entries(m)
    n, cols = arr.shape
    a0 = np.asarray(a0, dtype=np.int64)
    b0 = np.asarray(b0, dtype=np.int64)
    if a0.size == 0:
        return np.empty(0)
    if a0.min() < 0 or b0.min() < 0 or a0.max() + omega_u > n or b0.max() + omega_w > cols:
        raise IndexOutOfRange("some placements do not fit the distance matrix")
    lo, hi = _resolve_ranges(omega_u, omega_w, radius)
    flat = arr.ravel()
    base = a0 * cols + b0
    nb = a0.size
    inf = np.inf

    prev = np.full((omega_w, nb), inf)
    cur = np.full((omega_w, nb), inf)
    acc = flat[base].copy()
    prev[0] = acc
    for q in range(1, int(hi[0]) + 1):
        acc = acc + flat[base + q]
        prev[q] = acc

    tmp = np.empty(nb)
    for p in range(1, omega_u):
        rowbase = base + p * cols
        plo, phi = int(lo[p]), int(hi[p])
        # Cells this row reads that the previous row never wrote must be inf.
        r0 = max(0, plo - 1)
        lo_prev, hi_prev = int(lo[p - 1]), int(hi[p - 1])
        if r0 < lo_prev:
            prev[r0 : min(phi + 1, lo_prev)] = inf
        if phi > hi_prev:
            prev[max(r0, hi_prev + 1) : phi + 1] = inf
        if plo >= 1:
            cur[plo - 1] = inf
        for q in range(plo, phi + 1):
            if q == 0:
                np.add(prev[0], flat[rowbase], out=cur[0])
                continue
            np.minimum(prev[q], prev[q - 1], out=tmp)
            np.minimum(tmp, cur[q - 1], out=tmp)
            np.add(tmp, flat[rowbase + q], out=cur[q])
        prev, cur = cur, prev
    out = prev[omega_w - 1].copy()
    if radius is not None and not np.all(np.isfinite(out)):
        raise BandInfeasible(
            f"radius {radius} band disconnects the corners of a ({omega_u},{omega_w}) window"
        )
    return out


def dtw_matrix_full(m, omega_u: int, omega_w: int, *, radius: int | None = None) -> np.ndarray:
    """The exact windowed-DTW value at every placement.

    This is the quadratic object the pruned search avoids materializing;
    it backs the brute-force baseline and the full top-k table. Placements
    are processed in row blocks so the DP stays vectorized without holding
    per-cell state for the whole grid.
    """
    arr = _entries(m)
    n, cols = arr.shape
    if omega_u > n or omega_w > cols:
        raise WindowTooLarge(f"windows ({omega_u},{omega_w}) do not fit matrix of shape {arr.shape}")
    pa = n - omega_u + 1
    pb = cols - omega_w + 1
    lo, hi = _resolve_ranges(omega_u, omega_w, radius)
    inf = np.inf
    # Block size keeps the two (omega_w, block, pb) DP buffers near 50 MB.
    block = max(1, min(pa, int(3.2e6 / max(1, omega_w * pb))))
    out = np.empty((pa, pb))
    for astart in range(0, pa, block):
        asize = min(block, pa - astart)
        prev = np.full((omega_w, asize, pb), inf)
        cur = np.full((omega_w, asize, pb), inf)
        tmp = np.empty((asize, pb))
        rows0 = arr[astart : astart + asize]
        prev[0] = rows0[:, 0:pb]
        for q in range(1, int(hi[0]) + 1):
            np.add(prev[q - 1], rows0[:, q : q + pb], out=prev[q])
        for p in range(1, omega_u):
            rows = arr[astart + p : astart + p + asize]
            plo, phi = int(lo[p]), int(hi[p])
            r0 = max(0, plo - 1)
            lo_prev, hi_prev = int(lo[p - 1]), int(hi[p - 1])
            if r0 < lo_prev:
                prev[r0 : min(phi + 1, lo_prev)] = inf
            if phi > hi_prev:
                prev[max(r0, hi_prev + 1) : phi + 1] = inf
            if plo >= 1:
                cur[plo - 1] = inf
            for q in range(plo, phi + 1):
                if q == 0:
                    np.add(prev[0], rows[:, 0:pb], out=cur[0])
                    continue
                np.minimum(prev[q], prev[q - 1], out=tmp)
                np.minimum(tmp, cur[q - 1], out=tmp)
                np.add(tmp, rows[:, q : q + pb], out=cur[q])
            prev, cur = cur, prev
        out[astart : astart + asize] = prev[omega_w - 1]
    if radius is not None and not np.all(np.isfinite(out)):
        raise BandInfeasible(
            f"radius {radius} band disconnects the corners of a ({omega_u},{omega_w}) window"
        )
    return out
