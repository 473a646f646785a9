"""Rescale a 2-D layout to the canonical domain [0,1] x [0, y2max].

Both axes are divided by the same scalar (the emb1 range) after
subtracting the per-axis minimum, so the layout's aspect ratio is
preserved and the second axis tops out at y2max = r2/r1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateAxisError
from .ingest import EmbeddingTable, _freeze


@dataclass(frozen=True)
class ScaledEmbedding:
    """Layout rescaled to [0,1] x [0,y2max], with the original axis limits."""

    ids: np.ndarray      # (n,) int64
    points: np.ndarray   # (n, 2) float64, scaled coordinates
    lim1: tuple[float, float]
    lim2: tuple[float, float]
    y2max: float

    @property
    def n(self) -> int:
        return int(self.ids.size)


def scale_embedding(emb: EmbeddingTable) -> ScaledEmbedding:
    """Map emb1 to [0,1] and emb2 to [0, y2max], dividing both by r1."""
    e1, e2 = emb.coords[:, 0], emb.coords[:, 1]
    lim1 = (float(e1.min()), float(e1.max()))
    lim2 = (float(e2.min()), float(e2.max()))
    r1 = lim1[1] - lim1[0]
    r2 = lim2[1] - lim2[0]
    if r1 == 0.0:
        raise DegenerateAxisError("emb1")
    if r2 == 0.0:
        raise DegenerateAxisError("emb2")
    points = np.column_stack(((e1 - lim1[0]) / r1, (e2 - lim2[0]) / r1))
    return ScaledEmbedding(
        ids=emb.ids,
        points=_freeze(points),
        lim1=lim1,
        lim2=lim2,
        y2max=r2 / r1,
    )


def unscale_points(scaled: ScaledEmbedding, points) -> np.ndarray:
    """Map scaled coordinates back to the original embedding units."""
    points = np.asarray(points, dtype=np.float64)
    r1 = scaled.lim1[1] - scaled.lim1[0]
    out = np.empty_like(points)
    out[..., 0] = points[..., 0] * r1 + scaled.lim1[0]
    out[..., 1] = points[..., 1] * r1 + scaled.lim2[0]
    return out
