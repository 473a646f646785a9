"""Bundled synthetic benchmark data.

A deterministic S-curve: a 3-D S-shaped sheet (x1..x3) padded with
small-noise dimensions up to p=7. Because the sheet is parametrized by
arc length, its intrinsic (t, u) coordinates double as a perfectly
locality-preserving 2-D layout, and shuffling that layout against the
IDs gives a matched worst-case layout for the same data.
"""

from __future__ import annotations

import numpy as np

from .ingest import EmbeddingTable, HighDTable, embedding_from_arrays, highd_from_arrays

DEFAULT_SEED = 20240817


def make_scurve(
    n: int = 5000,
    noise_dims: int = 4,
    noise_scale: float = 0.01,
    seed: int = DEFAULT_SEED,
) -> tuple[HighDTable, EmbeddingTable]:
    """S-curve sheet in p = 3 + noise_dims dimensions plus its intrinsic layout.

    The sheet is x1 = sin(t), x2 = u, x3 = sign(t)*(cos(t) - 1) with
    t in (-3pi/2, 3pi/2) and u in [0, 2]. t is an arc-length parameter
    along the curve, so (t, u) is an isometric unrolling of the sheet.
    """
    rng = np.random.default_rng(seed)
    t = rng.uniform(-1.5 * np.pi, 1.5 * np.pi, size=n)
    u = rng.uniform(0.0, 2.0, size=n)
    sheet = np.column_stack((np.sin(t), u, np.sign(t) * (np.cos(t) - 1.0)))
    noise = rng.normal(0.0, noise_scale, size=(n, noise_dims))
    coords = np.hstack((sheet, noise))
    ids = np.arange(1, n + 1)
    highd = highd_from_arrays(ids, coords)
    layout = embedding_from_arrays(ids, np.column_stack((t, u)))
    return highd, layout


def shuffled_layout(emb: EmbeddingTable, seed: int = DEFAULT_SEED) -> EmbeddingTable:
    """Same layout coordinates re-dealt to the IDs at random.

    Destroys the point-to-position correspondence while keeping the
    marginal point cloud identical, which makes it a floor for any
    locality-preservation score.
    """
    rng = np.random.default_rng(seed)
    perm = rng.permutation(emb.n)
    return embedding_from_arrays(emb.ids, emb.coords[perm])
