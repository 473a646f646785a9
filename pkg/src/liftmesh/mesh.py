"""2-D wireframe over bin centroids.

Delaunay-triangulates the centroids, extracts the unique undirected
edge set, drops edges that are long relative to the hexagon width
(which would bridge holes in the lattice), and reindexes the surviving
vertices to a contiguous 1..k range for downstream consumers that need
a dense vertex numbering.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial import Delaunay, QhullError

from .exceptions import ConfigError
from .hexgrid import BinTable, prune_bins
from .ingest import _freeze

# Edges longer than this multiple of a1 are discarded. The full lattice
# triangulation contains hull-following edges of length sqrt(3)*a1 on
# its staggered sides; any factor in (1, sqrt(3)) keeps exactly the
# nearest-neighbor mesh.
DEFAULT_EDGE_CUTOFF_FACTOR = 1.5


@dataclass(frozen=True)
class Triangulation:
    """Delaunay triangulation of bin centroids."""

    h: np.ndarray          # (v,) int64, hexagon index per vertex
    points: np.ndarray     # (v, 2) float64
    counts: np.ndarray     # (v,) int64, n_h per vertex
    triangles: np.ndarray  # (t, 3) int64, vertex indices


@dataclass(frozen=True)
class WireMesh:
    """Unique undirected centroid-to-centroid edges with annotations."""

    from_h: np.ndarray          # (e,) int64, from_h < to_h
    to_h: np.ndarray            # (e,) int64
    x_from: np.ndarray          # (e,) float64
    y_from: np.ndarray
    x_to: np.ndarray
    y_to: np.ndarray
    length: np.ndarray          # (e,) float64, Euclidean
    from_count: np.ndarray      # (e,) int64
    to_count: np.ndarray        # (e,) int64
    from_reindexed: np.ndarray  # (e,) int64, contiguous 1..k over edge vertices
    to_reindexed: np.ndarray    # (e,) int64

    @property
    def n_edges(self) -> int:
        return int(self.from_h.size)

    def vertex_set(self) -> np.ndarray:
        """Sorted distinct hexagon indices incident to any edge."""
        return np.unique(np.concatenate((self.from_h, self.to_h)))


def _triangle_areas(points: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    a = points[triangles[:, 0]]
    b = points[triangles[:, 1]]
    c = points[triangles[:, 2]]
    return 0.5 * np.abs(
        (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
        - (c[:, 0] - a[:, 0]) * (b[:, 1] - a[:, 1])
    )


def triangulate_centroids(bins: BinTable) -> Triangulation:
    """Delaunay triangulation of the given bin centroids.

    Needs at least 3 non-collinear centroids; degenerate input raises
    ConfigError rather than being silently patched.
    """
    points = np.column_stack((bins.cx, bins.cy))
    if points.shape[0] < 3:
        raise ConfigError(f"triangulation needs >= 3 centroids, got {points.shape[0]}")
    try:
        tri = Delaunay(points)
    except QhullError as exc:
        raise ConfigError(f"degenerate centroid set (collinear?): {exc}") from None
    simplices = np.asarray(tri.simplices, dtype=np.int64)
    if simplices.size == 0:
        raise ConfigError("degenerate centroid set: triangulation is empty")
    simplices = simplices[_triangle_areas(points, simplices) > 0.0]
    return Triangulation(
        h=bins.h,
        points=_freeze(points),
        counts=bins.n_h,
        triangles=_freeze(simplices),
    )


def extract_edges(
    tri: Triangulation,
    a1: float,
    edge_cutoff_factor: float = DEFAULT_EDGE_CUTOFF_FACTOR,
) -> WireMesh:
    """Unique undirected edges of a triangulation, annotated and filtered.

    Duplicate and reversed links collapse to a single record with
    from_h < to_h. Edges longer than edge_cutoff_factor*a1 are dropped.
    Output rows are sorted by (from_h, to_h) and carry reindexed vertex
    ids (see reindex_edges).
    """
    t = tri.triangles
    pairs = np.vstack((t[:, [0, 1]], t[:, [1, 2]], t[:, [0, 2]]))
    pairs = np.unique(np.sort(pairs, axis=1), axis=0)

    # vertex order follows h order, so index order == h order
    from_h = tri.h[pairs[:, 0]]
    to_h = tri.h[pairs[:, 1]]
    p_from = tri.points[pairs[:, 0]]
    p_to = tri.points[pairs[:, 1]]
    length = np.hypot(p_to[:, 0] - p_from[:, 0], p_to[:, 1] - p_from[:, 1])

    keep = length <= edge_cutoff_factor * a1
    order = np.lexsort((to_h[keep], from_h[keep]))

    def col(a):
        return _freeze(a[keep][order])

    mesh = WireMesh(
        from_h=col(from_h),
        to_h=col(to_h),
        x_from=col(p_from[:, 0]),
        y_from=col(p_from[:, 1]),
        x_to=col(p_to[:, 0]),
        y_to=col(p_to[:, 1]),
        length=col(length),
        from_count=col(tri.counts[pairs[:, 0]]),
        to_count=col(tri.counts[pairs[:, 1]]),
        from_reindexed=np.empty(0, dtype=np.int64),
        to_reindexed=np.empty(0, dtype=np.int64),
    )
    return reindex_edges(mesh)


def reindex_edges(mesh: WireMesh) -> WireMesh:
    """Populate from_reindexed/to_reindexed with a dense 1..k numbering.

    The map is order-preserving over the sorted distinct hexagon
    indices that appear in the edge list, so it is the identity when
    no vertex has been removed.
    """
    verts = np.unique(np.concatenate((mesh.from_h, mesh.to_h)))
    from_re = np.searchsorted(verts, mesh.from_h) + 1
    to_re = np.searchsorted(verts, mesh.to_h) + 1
    return replace(
        mesh,
        from_reindexed=_freeze(from_re.astype(np.int64)),
        to_reindexed=_freeze(to_re.astype(np.int64)),
    )


def filter_mesh_to_bins(mesh: WireMesh, surviving_h: np.ndarray) -> WireMesh:
    """Keep only edges whose both endpoints survive, then reindex."""
    surviving_h = np.asarray(surviving_h, dtype=np.int64)
    keep = np.isin(mesh.from_h, surviving_h) & np.isin(mesh.to_h, surviving_h)

    def col(a):
        return _freeze(a[keep])

    filtered = WireMesh(
        from_h=col(mesh.from_h),
        to_h=col(mesh.to_h),
        x_from=col(mesh.x_from),
        y_from=col(mesh.y_from),
        x_to=col(mesh.x_to),
        y_to=col(mesh.y_to),
        length=col(mesh.length),
        from_count=col(mesh.from_count),
        to_count=col(mesh.to_count),
        from_reindexed=np.empty(0, dtype=np.int64),
        to_reindexed=np.empty(0, dtype=np.int64),
    )
    return reindex_edges(filtered)


def prune_model(
    bins: BinTable,
    mesh: WireMesh,
    hd_thresh: float,
    md_thresh: float | None = None,
    b1: int | None = None,
) -> tuple[BinTable, WireMesh]:
    """Remove low-count (and optionally low-neighborhood) bins and their edges.

    Bins with n_h <= hd_thresh go; when md_thresh is given, so do bins
    flagged by the neighborhood-density rule (which requires the full
    lattice table plus b1). Edges losing either endpoint are dropped
    and the survivors reindexed.
    """
    if md_thresh is not None and b1 is None:
        raise ConfigError("md_thresh pruning requires b1")
    pruned = prune_bins(bins, hd_thresh, md_thresh, b1 if b1 is not None else 0)
    return pruned, filter_mesh_to_bins(mesh, pruned.h)
