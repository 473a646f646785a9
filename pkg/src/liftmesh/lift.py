"""Lift the 2-D model into p-D and assemble the fitted model object.

Each surviving bin's p-D position is the arithmetic mean of its member
points, so the 2-D wireframe gains a p-D embedding that can be
projected alongside the data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, IdMismatchError, InputFormatError
from .hexgrid import (
    BinAssignment,
    BinTable,
    GridConfig,
    assign_points,
    compute_grid_config,
    generate_centroids,
    merge_centroids_counts,
    prune_bins,
    standardize_counts,
)
from .ingest import EmbeddingTable, HighDTable, _freeze, align
from .mesh import (
    DEFAULT_EDGE_CUTOFF_FACTOR,
    WireMesh,
    extract_edges,
    prune_model,
    reindex_edges,
    triangulate_centroids,
)
from .scale import ScaledEmbedding, scale_embedding, unscale_points


@dataclass(frozen=True)
class HighDModel:
    """Per-bin p-D means for the surviving bins."""

    h: np.ndarray      # (m,) int64, ascending
    means: np.ndarray  # (m, p) float64

    @property
    def m(self) -> int:
        return int(self.h.size)

    @property
    def p(self) -> int:
        return int(self.means.shape[1])


@dataclass(frozen=True)
class FitParams:
    """Provenance of a fit: the knobs that shaped the model."""

    hd_thresh: float
    md_thresh: float | None
    edge_cutoff_factor: float
    retriangulate: bool


@dataclass(frozen=True)
class FittedModel:
    """The 2-D model, its p-D lift, the wireframe, and provenance."""

    scaled: ScaledEmbedding
    config: GridConfig
    bins: BinTable          # pruned; survives as the 2-D model
    model_highd: HighDModel
    mesh: WireMesh
    params: FitParams

    @property
    def model_2d(self) -> BinTable:
        """Surviving bin centroids (alias for the pruned bin table)."""
        return self.bins

    @property
    def m(self) -> int:
        return int(self.bins.h.size)

    @property
    def p(self) -> int:
        return self.model_highd.p


@dataclass(frozen=True)
class CombinedTable:
    """Stacked data + model point rows for tour-style display.

    Data rows come first (ascending ID), then model rows (ascending h).
    ids is -1 on model rows, h is -1 on data rows. emb is present for
    tables built by combine_all, None otherwise; errors likewise.
    """

    types: np.ndarray            # (n+m,) unicode, "data" | "model"
    ids: np.ndarray              # (n+m,) int64, -1 for model rows
    h: np.ndarray                # (n+m,) int64, -1 for data rows
    xs: np.ndarray               # (n+m, p) float64
    emb: np.ndarray | None       # (n+m, 2) float64
    errors: np.ndarray | None    # (n+m,) float64, 0.0 on model rows

    @property
    def n_rows(self) -> int:
        return int(self.types.size)


def lift_bin_means(highd: HighDTable, assign: BinAssignment) -> HighDModel:
    """Mean p-D coordinates per non-empty bin.

    Rows of highd and assign must be aligned on ID (same order).
    """
    if not np.array_equal(highd.ids, assign.ids):
        raise InputFormatError("highd and assignment rows are not aligned on ID")
    order = np.argsort(assign.h, kind="stable")
    h_sorted = assign.h[order]
    coords_sorted = highd.coords[order]
    uniq, starts = np.unique(h_sorted, return_index=True)
    means = np.empty((uniq.size, highd.p), dtype=np.float64)
    bounds = np.append(starts, h_sorted.size)
    for i in range(uniq.size):
        means[i] = coords_sorted[bounds[i] : bounds[i + 1]].mean(axis=0)
    return HighDModel(h=_freeze(uniq.astype(np.int64)), means=_freeze(means))


def _restrict_model(model: HighDModel, surviving_h: np.ndarray) -> HighDModel:
    keep = np.isin(model.h, surviving_h)
    return HighDModel(h=_freeze(model.h[keep]), means=_freeze(model.means[keep]))


def fit_model(
    highd: HighDTable,
    emb: EmbeddingTable,
    b1: int,
    q: float,
    hd_thresh: float,
    md_thresh: float | None = None,
    *,
    edge_cutoff_factor: float = DEFAULT_EDGE_CUTOFF_FACTOR,
    retriangulate: bool = False,
) -> FittedModel:
    """Run the whole pipeline: scale, grid, bin, mesh, prune, lift.

    With retriangulate=False (default) the full-lattice mesh is built
    first and then filtered to the surviving bins; with True the mesh
    is rebuilt from the surviving centroids after pruning.
    """
    highd, emb = align(highd, emb)
    scaled = scale_embedding(emb)
    cfg = compute_grid_config(scaled, b1, q)
    centroids = generate_centroids(cfg)
    assign = assign_points(scaled, centroids)
    counts = standardize_counts(assign)
    bins = merge_centroids_counts(centroids, counts)

    if retriangulate:
        pruned_bins = prune_bins(bins, hd_thresh, md_thresh, cfg.b1)
        if pruned_bins.b >= 3:
            tri = triangulate_centroids(pruned_bins)
            pruned_mesh = extract_edges(tri, cfg.a1, edge_cutoff_factor)
        else:
            pruned_mesh = _empty_mesh()
    else:
        tri = triangulate_centroids(bins)
        full_mesh = extract_edges(tri, cfg.a1, edge_cutoff_factor)
        pruned_bins, pruned_mesh = prune_model(
            bins, full_mesh, hd_thresh, md_thresh, cfg.b1
        )

    model_highd = _restrict_model(lift_bin_means(highd, assign), pruned_bins.h)
    return FittedModel(
        scaled=scaled,
        config=cfg,
        bins=pruned_bins,
        model_highd=model_highd,
        mesh=pruned_mesh,
        params=FitParams(
            hd_thresh=float(hd_thresh),
            md_thresh=None if md_thresh is None else float(md_thresh),
            edge_cutoff_factor=float(edge_cutoff_factor),
            retriangulate=bool(retriangulate),
        ),
    )


def _empty_mesh() -> WireMesh:
    z = np.empty(0, dtype=np.int64)
    zf = np.empty(0, dtype=np.float64)
    return reindex_edges(
        WireMesh(
            from_h=z, to_h=z,
            x_from=zf, y_from=zf, x_to=zf, y_to=zf,
            length=zf, from_count=z, to_count=z,
            from_reindexed=z, to_reindexed=z,
        )
    )


def combine_data_model(highd: HighDTable, model: FittedModel) -> CombinedTable:
    """Stack the data points and the bin-averaged model points.

    Rows carry the p-D coordinates and a type tag; model rows keep
    their hexagon index.
    """
    if highd.p != model.p:
        raise ConfigError(f"dimension mismatch: data p={highd.p}, model p={model.p}")
    n, m = highd.n, model.m
    types = np.array(["data"] * n + ["model"] * m)
    ids = np.concatenate((highd.ids, np.full(m, -1, dtype=np.int64)))
    h = np.concatenate((np.full(n, -1, dtype=np.int64), model.model_highd.h))
    xs = np.vstack((highd.coords, model.model_highd.means))
    return CombinedTable(
        types=_freeze(types), ids=_freeze(ids), h=_freeze(h), xs=_freeze(xs),
        emb=None, errors=None,
    )


def combine_all(
    highd: HighDTable,
    emb: EmbeddingTable,
    model: FittedModel,
    residuals=None,
) -> CombinedTable:
    """Linked-view table: data + model rows with 2-D coordinates attached.

    Data rows carry the original embedding coordinates; model rows
    carry their bin centroid mapped back into the original embedding
    units. When a residual table is supplied, data rows gain its
    row-wise total squared error and model rows carry zero.
    """
    base = combine_data_model(highd, model)
    highd, emb = align(highd, emb)
    if not np.array_equal(emb.ids, model.scaled.ids):
        eset = set(emb.ids.tolist())
        mset = set(model.scaled.ids.tolist())
        raise IdMismatchError(missing_in_emb=mset - eset, missing_in_highd=eset - mset)
    centroids_scaled = np.column_stack((model.bins.cx, model.bins.cy))
    centroids_orig = unscale_points(model.scaled, centroids_scaled)
    emb_block = np.vstack((emb.coords, centroids_orig))

    errors = None
    if residuals is not None:
        if not np.array_equal(residuals.ids, highd.ids):
            raise InputFormatError("residual rows are not aligned with the data IDs")
        errors = _freeze(
            np.concatenate((residuals.row_total, np.zeros(model.m, dtype=np.float64)))
        )
    return CombinedTable(
        types=base.types, ids=base.ids, h=base.h, xs=base.xs,
        emb=_freeze(emb_block), errors=errors,
    )
