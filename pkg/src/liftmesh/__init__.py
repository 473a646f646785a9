"""liftmesh: hexagon-mesh models of 2-D embeddings, lifted back to p-D.

Fit a staggered hexagon lattice over any nonlinear-dimension-reduction
layout, lift the surviving bins into the original p-D space via bin
means, and score how faithfully the layout represents the data through
predictions, residuals, and the hexbin error.
"""

import os as _os

# LIFTMESH_THREADS caps the numeric backends; it must land in the
# environment before numpy's first import to take effect.
_cap = _os.environ.get("LIFTMESH_THREADS")
if _cap:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _cap)
del _os, _cap

from .bundle import build_bundle, save_bundle
from .datasets import make_scurve, shuffled_layout
from .evaluate import (
    ErrorSummary,
    PredictionTable,
    ResidualTable,
    SweepRecord,
    augment_residuals,
    hbe_sweep,
    predict_embedding,
    summarize_errors,
)
from .exceptions import (
    ConfigError,
    DegenerateAxisError,
    DuplicateIdError,
    EmptyModelError,
    IdMismatchError,
    InputFormatError,
    LiftmeshError,
)
from .hexgrid import (
    BinAssignment,
    BinCounts,
    BinTable,
    CentroidTable,
    GridConfig,
    HexVertexTable,
    NeighborDensity,
    assign_points,
    compute_grid_config,
    find_low_density_bins,
    generate_centroids,
    generate_hex_vertices,
    grid_config_from_y2max,
    group_points_by_bin,
    mean_neighbor_density,
    merge_centroids_counts,
    standardize_counts,
)
from .ingest import (
    EmbeddingTable,
    HighDTable,
    align,
    embedding_from_arrays,
    highd_from_arrays,
    load_embedding,
    load_highd,
    write_embedding,
    write_highd,
)
from .lift import (
    CombinedTable,
    FitParams,
    FittedModel,
    HighDModel,
    combine_all,
    combine_data_model,
    fit_model,
    lift_bin_means,
)
from .mesh import (
    DEFAULT_EDGE_CUTOFF_FACTOR,
    Triangulation,
    WireMesh,
    extract_edges,
    prune_model,
    reindex_edges,
    triangulate_centroids,
)
from .render import render_view
from .scale import ScaledEmbedding, scale_embedding, unscale_points
from .serialize import load_model, save_model

__version__ = "0.1.0"
