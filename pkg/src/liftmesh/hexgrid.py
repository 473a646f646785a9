"""Staggered hexagon lattice over the buffered canonical domain.

The lattice is laid out row-major: row r (1-indexed) sits at
y0 + (r-1)*a2, odd rows start at x0, even rows are shifted right by
a1/2. a2 = (sqrt(3)/2)*a1, which makes every centroid's six nearest
lattice neighbors sit at distance exactly a1.

The b2/a1 sizing rule is pinned by golden regression tests; see
compute_grid_config for the exact formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, EmptyModelError, InputFormatError
from .ingest import _freeze
from .scale import ScaledEmbedding

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class GridConfig:
    """Hexagon lattice parameters over the buffered scaled domain."""

    b1: int                       # bins along x
    b2: int                       # bins along y
    a1: float                     # hexagon width == horizontal centroid spacing
    a2: float                     # vertical row spacing == (sqrt3/2)*a1
    q: float                      # buffer proportion
    origin: tuple[float, float]   # centroid of bin h=1

    @property
    def b(self) -> int:
        """Total hexagon count."""
        return self.b1 * self.b2


@dataclass(frozen=True)
class CentroidTable:
    """All b lattice centroids, h = 1..b assigned row-major."""

    h: np.ndarray   # (b,) int64
    cx: np.ndarray  # (b,) float64
    cy: np.ndarray  # (b,) float64


@dataclass(frozen=True)
class HexVertexTable:
    """Six polygon vertices per hexagon, in a fixed angular order."""

    h: np.ndarray         # (b,) int64
    vertices: np.ndarray  # (b, 6, 2) float64


@dataclass(frozen=True)
class BinAssignment:
    """Each scaled point labeled with its nearest centroid's index."""

    ids: np.ndarray     # (n,) int64
    points: np.ndarray  # (n, 2) float64, scaled coordinates
    h: np.ndarray       # (n,) int64, assigned hexagon


@dataclass(frozen=True)
class BinCounts:
    """Raw and standardized point counts for the non-empty bins only."""

    h: np.ndarray    # (k,) int64, ascending
    n_h: np.ndarray  # (k,) int64, > 0
    w_h: np.ndarray  # (k,) float64 in (0, 1]


@dataclass(frozen=True)
class BinTable:
    """One row per hexagon: centroid, raw count, standardized count."""

    h: np.ndarray    # int64, ascending
    cx: np.ndarray   # float64
    cy: np.ndarray   # float64
    n_h: np.ndarray  # int64 (0 for empty bins)
    w_h: np.ndarray  # float64 (0 for empty bins)

    @property
    def b(self) -> int:
        return int(self.h.size)


@dataclass(frozen=True)
class NeighborDensity:
    """Mean standardized count over each non-empty bin's lattice neighbors."""

    h: np.ndarray             # (k,) int64
    mean_density: np.ndarray  # (k,) float64


def grid_config_from_y2max(y2max: float, b1: int, q: float) -> GridConfig:
    """Size the lattice for a scaled domain [0,1] x [0,y2max].

    The provisional width r1*(1+2q)/(b1-1) fixes the row count b2; the
    final spacing is then re-derived from the buffered vertical span so
    that rows land exactly on the buffered limits:

        a1_init = (1+2q)/(b1-1)
        b2      = ceil(y2max*(1+2q) / ((sqrt3/2)*a1_init)) + 1
        s       = y2max + q*(1+y2max)
        a2      = s/(b2-1),  a1 = (2/sqrt3)*a2
        origin  = (-q, -q*y2max)
    """
    if isinstance(b1, bool) or not isinstance(b1, (int, np.integer)) or b1 < 2:
        raise ConfigError(f"b1 must be an integer >= 2, got {b1!r}")
    b1 = int(b1)
    if not (0.0 < q < 0.5):
        raise ConfigError(f"buffer q must lie in (0, 0.5), got {q!r}")
    if not (y2max > 0.0 and math.isfinite(y2max)):
        raise ConfigError(f"y2max must be a finite positive ratio, got {y2max!r}")
    a1_init = (1.0 + 2.0 * q) / (b1 - 1)
    b2 = math.ceil(y2max * (1.0 + 2.0 * q) / ((SQRT3 / 2.0) * a1_init)) + 1
    s = y2max + q * (1.0 + y2max)
    a2 = s / (b2 - 1)
    a1 = (2.0 / SQRT3) * a2
    return GridConfig(b1=b1, b2=b2, a1=a1, a2=a2, q=q, origin=(-q, -q * y2max))


def compute_grid_config(scaled: ScaledEmbedding, b1: int, q: float) -> GridConfig:
    """Lattice configuration for a scaled embedding."""
    return grid_config_from_y2max(scaled.y2max, b1, q)


def generate_centroids(cfg: GridConfig) -> CentroidTable:
    """All b1*b2 centroids, row-major, even rows shifted by a1/2."""
    x0, y0 = cfg.origin
    rows = np.arange(cfg.b2, dtype=np.float64)          # 0-based row index
    cols = np.arange(cfg.b1, dtype=np.float64)
    offsets = np.where(np.arange(1, cfg.b2 + 1) % 2 == 0, cfg.a1 / 2.0, 0.0)
    cx = (x0 + offsets[:, None] + cols[None, :] * cfg.a1).ravel()
    cy = np.repeat(y0 + rows * cfg.a2, cfg.b1)
    h = np.arange(1, cfg.b + 1, dtype=np.int64)
    return CentroidTable(h=_freeze(h), cx=_freeze(cx), cy=_freeze(cy))


# Vertex offsets relative to the centroid, as multiples of
# (dx, dy, vf) = (a1/2, a1/sqrt3, a1/(2*sqrt3)), starting at the top
# vertex and proceeding counter-clockwise.
_VERTEX_PATTERN = np.array(
    [
        [0.0, 1.0],    # ( 0, +dy)
        [-1.0, 0.5],   # (-dx, +vf)
        [-1.0, -0.5],  # (-dx, -vf)
        [0.0, -1.0],   # ( 0, -dy)
        [1.0, -0.5],   # (+dx, -vf)
        [1.0, 0.5],    # (+dx, +vf)
    ]
)


def generate_hex_vertices(centroids: CentroidTable, a1: float) -> HexVertexTable:
    """Six boundary vertices for every hexagon."""
    if not a1 > 0:
        raise ConfigError(f"a1 must be positive, got {a1!r}")
    dx = a1 / 2.0
    dy = a1 / SQRT3
    offsets = np.column_stack((_VERTEX_PATTERN[:, 0] * dx, _VERTEX_PATTERN[:, 1] * dy))
    centers = np.column_stack((centroids.cx, centroids.cy))
    vertices = centers[:, None, :] + offsets[None, :, :]
    return HexVertexTable(h=centroids.h, vertices=_freeze(vertices))


def assign_points(
    scaled: ScaledEmbedding, centroids: CentroidTable, chunk: int = 4096
) -> BinAssignment:
    """Assign every point to its nearest centroid by Euclidean distance.

    Ties break toward the smallest hexagon index. Equivalent to the
    brute-force argmin over all point/centroid pairs; chunking only
    bounds memory.
    """
    if centroids.h.size == 0:
        raise ConfigError("centroid table is empty")
    pts = scaled.points
    out = np.empty(pts.shape[0], dtype=np.int64)
    for lo in range(0, pts.shape[0], chunk):
        px = pts[lo : lo + chunk, 0][:, None]
        py = pts[lo : lo + chunk, 1][:, None]
        d2 = (px - centroids.cx[None, :]) ** 2 + (py - centroids.cy[None, :]) ** 2
        out[lo : lo + chunk] = np.argmin(d2, axis=1)
    return BinAssignment(ids=scaled.ids, points=pts, h=_freeze(centroids.h[out]))


def standardize_counts(assign: BinAssignment) -> BinCounts:
    """Raw per-bin counts and counts standardized by the maximum bin count."""
    if assign.h.size == 0:
        raise InputFormatError("cannot standardize counts of an empty assignment")
    h_vals, counts = np.unique(assign.h, return_counts=True)
    w = counts / counts.max()
    return BinCounts(
        h=_freeze(h_vals.astype(np.int64)),
        n_h=_freeze(counts.astype(np.int64)),
        w_h=_freeze(w),
    )


def merge_centroids_counts(centroids: CentroidTable, counts: BinCounts) -> BinTable:
    """Full join of centroids with counts; empty bins carry zeros."""
    unknown = np.setdiff1d(counts.h, centroids.h)
    if unknown.size:
        raise InputFormatError(f"counts reference unknown hexagons: {unknown.tolist()}")
    n_h = np.zeros(centroids.h.size, dtype=np.int64)
    w_h = np.zeros(centroids.h.size, dtype=np.float64)
    pos = np.searchsorted(centroids.h, counts.h)
    n_h[pos] = counts.n_h
    w_h[pos] = counts.w_h
    return BinTable(
        h=centroids.h,
        cx=centroids.cx,
        cy=centroids.cy,
        n_h=_freeze(n_h),
        w_h=_freeze(w_h),
    )


def group_points_by_bin(assign: BinAssignment) -> dict[int, np.ndarray]:
    """IDs of the member points of each non-empty bin, keyed by h ascending."""
    order = np.argsort(assign.h, kind="stable")
    h_sorted = assign.h[order]
    ids_sorted = assign.ids[order]
    groups: dict[int, np.ndarray] = {}
    if h_sorted.size == 0:
        return groups
    boundaries = np.flatnonzero(np.diff(h_sorted)) + 1
    for chunk_ids, chunk_h in zip(
        np.split(ids_sorted, boundaries), np.split(h_sorted, boundaries)
    ):
        groups[int(chunk_h[0])] = _freeze(chunk_ids)
    return groups


def _lattice_shape(bins: BinTable, b1: int) -> int:
    b = bins.b
    if b1 < 1 or b % b1 != 0 or not np.array_equal(bins.h, np.arange(1, b + 1)):
        raise ConfigError(
            f"bin table is not a full row-major lattice with b1={b1} (b={b})"
        )
    return b // b1


def mean_neighbor_density(bins: BinTable, b1: int) -> NeighborDensity:
    """Mean standardized count over each non-empty bin's lattice neighbors.

    Neighbors are the up-to-six bins at centroid distance a1: the two
    same-row bins, the two directly above/below, and the diagonal pair
    whose column shift follows the row stagger (+1 for even rows, -1
    for odd rows, 1-indexed). Offsets falling outside the grid or
    wrapping across a row edge are dropped, and the mean is taken over
    the neighbors that remain.
    """
    b2 = _lattice_shape(bins, b1)
    w = bins.w_h.reshape(b2, b1)
    means = np.zeros(bins.b, dtype=np.float64)
    for idx in range(bins.b):
        r, c = divmod(idx, b1)              # 0-based row, col
        delta = 1 if (r + 1) % 2 == 0 else -1
        acc = 0.0
        cnt = 0
        for rr, cc in (
            (r, c - 1),
            (r, c + 1),
            (r - 1, c),
            (r + 1, c),
            (r - 1, c + delta),
            (r + 1, c + delta),
        ):
            if 0 <= rr < b2 and 0 <= cc < b1:
                acc += w[rr, cc]
                cnt += 1
        means[idx] = acc / cnt if cnt else 0.0
    keep = bins.n_h > 0
    return NeighborDensity(h=_freeze(bins.h[keep]), mean_density=_freeze(means[keep]))


def find_low_density_bins(bins: BinTable, b1: int, md_thresh: float) -> set[int]:
    """Non-empty bins whose mean neighborhood density falls below md_thresh."""
    if not (0.0 <= md_thresh <= 1.0):
        raise ConfigError(f"md_thresh must lie in [0, 1], got {md_thresh!r}")
    dens = mean_neighbor_density(bins, b1)
    flagged = dens.h[dens.mean_density < md_thresh]
    return {int(v) for v in flagged}


def prune_bins(
    bins: BinTable, hd_thresh: float, md_thresh: float | None, b1: int
) -> BinTable:
    """Drop bins with n_h <= hd_thresh, plus low-neighborhood bins if asked."""
    keep = bins.n_h > hd_thresh
    if md_thresh is not None:
        low = find_low_density_bins(bins, b1, md_thresh)
        if low:
            keep &= ~np.isin(bins.h, sorted(low))
    if not keep.any():
        raise EmptyModelError(
            f"no bin survives pruning (hd_thresh={hd_thresh}, md_thresh={md_thresh})"
        )
    return BinTable(
        h=_freeze(bins.h[keep]),
        cx=_freeze(bins.cx[keep]),
        cy=_freeze(bins.cy[keep]),
        n_h=_freeze(bins.n_h[keep]),
        w_h=_freeze(bins.w_h[keep]),
    )
