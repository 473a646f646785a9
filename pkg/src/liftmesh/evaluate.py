"""Predict 2-D positions from a fitted model and score the fit.

Prediction maps each p-D point to the bin whose lifted mean is nearest
in p-D; the predicted 2-D position is that bin's centroid. Residuals
are taken against the predicted bin's mean, per dimension. Two scores
summarize them: the total absolute error and the hexbin error, the
root of the mean (over observations) of the row-wise total squared
error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, EmptyModelError
from .ingest import EmbeddingTable, HighDTable, _freeze
from .lift import FittedModel, fit_model


@dataclass(frozen=True)
class PredictionTable:
    """Predicted 2-D position and bin for each query point."""

    ids: np.ndarray       # (n,) int64
    pred_emb: np.ndarray  # (n, 2) float64, matched bin centroid
    pred_h: np.ndarray    # (n,) int64


@dataclass(frozen=True)
class ResidualTable:
    """Per-observation, per-dimension residual diagnostics."""

    ids: np.ndarray           # (n,)
    coords: np.ndarray        # (n, p) original data
    pred_h: np.ndarray        # (n,)
    model_coords: np.ndarray  # (n, p) predicted bin means
    residuals: np.ndarray     # (n, p) coords - model_coords
    sq_errors: np.ndarray     # (n, p)
    abs_errors: np.ndarray    # (n, p)
    row_total: np.ndarray     # (n,) sum of squared residuals per row
    row_abs: np.ndarray       # (n,) sum of absolute residuals per row


@dataclass(frozen=True)
class ErrorSummary:
    """Total absolute error and hexbin error (RMSE over observations)."""

    error: float
    hbe: float


@dataclass(frozen=True)
class SweepRecord:
    """One sweep cell: a layout fitted at one b1 value."""

    layout: str
    b1: int
    a1: float | None
    error: float | None
    hbe: float | None
    failure: str | None = None


def _nearest_model_index(
    coords: np.ndarray, means: np.ndarray, chunk: int = 512
) -> np.ndarray:
    """Index of the nearest model mean per query row, first index on ties."""
    out = np.empty(coords.shape[0], dtype=np.int64)
    for lo in range(0, coords.shape[0], chunk):
        block = coords[lo : lo + chunk]
        d2 = ((block[:, None, :] - means[None, :, :]) ** 2).sum(axis=2)
        out[lo : lo + chunk] = np.argmin(d2, axis=1)
    return out


def predict_embedding(highd: HighDTable, model: FittedModel) -> PredictionTable:
    """Map each p-D query to the centroid of its nearest bin mean.

    Ties break toward the smallest hexagon index.
    """
    if model.m == 0:
        raise EmptyModelError("model has no bins")
    if highd.p != model.p:
        raise ConfigError(f"dimension mismatch: queries p={highd.p}, model p={model.p}")
    idx = _nearest_model_index(highd.coords, model.model_highd.means)
    pred_emb = np.column_stack((model.bins.cx[idx], model.bins.cy[idx]))
    return PredictionTable(
        ids=highd.ids,
        pred_emb=_freeze(pred_emb),
        pred_h=_freeze(model.model_highd.h[idx]),
    )


def augment_residuals(highd: HighDTable, model: FittedModel) -> ResidualTable:
    """Predictions plus per-dimension residual diagnostics, one row per point."""
    if model.m == 0:
        raise EmptyModelError("model has no bins")
    if highd.p != model.p:
        raise ConfigError(f"dimension mismatch: data p={highd.p}, model p={model.p}")
    idx = _nearest_model_index(highd.coords, model.model_highd.means)
    model_coords = model.model_highd.means[idx]
    residuals = highd.coords - model_coords
    sq = residuals**2
    ab = np.abs(residuals)
    return ResidualTable(
        ids=highd.ids,
        coords=highd.coords,
        pred_h=_freeze(model.model_highd.h[idx]),
        model_coords=_freeze(model_coords),
        residuals=_freeze(residuals),
        sq_errors=_freeze(sq),
        abs_errors=_freeze(ab),
        row_total=_freeze(sq.sum(axis=1)),
        row_abs=_freeze(ab.sum(axis=1)),
    )


def summarize_errors(highd: HighDTable, model: FittedModel) -> ErrorSummary:
    """Total absolute error and HBE = sqrt(mean row-wise squared error)."""
    res = augment_residuals(highd, model)
    return ErrorSummary(
        error=float(res.row_abs.sum()),
        hbe=float(np.sqrt(res.row_total.mean())),
    )


def hbe_sweep(
    highd: HighDTable,
    layouts: dict[str, EmbeddingTable],
    b1_values,
    q: float,
    hd_thresh: float,
    md_thresh: float | None = None,
    **fit_kwargs,
) -> list[SweepRecord]:
    """Fit every (layout, b1) cell and collect Error/HBE per cell.

    A failing cell is recorded with its failure message instead of
    aborting the sweep.
    """
    if not layouts:
        raise ConfigError("sweep needs at least one layout")
    b1_values = [int(v) for v in b1_values]
    if any(v < 2 for v in b1_values):
        raise ConfigError("all b1 values must be >= 2")
    records = []
    for name, emb in layouts.items():
        for b1 in b1_values:
            try:
                model = fit_model(
                    highd, emb, b1, q, hd_thresh, md_thresh, **fit_kwargs
                )
                summary = summarize_errors(highd, model)
                records.append(
                    SweepRecord(
                        layout=name,
                        b1=b1,
                        a1=model.config.a1,
                        error=summary.error,
                        hbe=summary.hbe,
                    )
                )
            except Exception as exc:  # noqa: BLE001 - cell failures are data
                records.append(
                    SweepRecord(
                        layout=name, b1=b1, a1=None, error=None, hbe=None,
                        failure=f"{type(exc).__name__}: {exc}",
                    )
                )
    return records
