"""Visualization bundle: everything the explorer UI needs in one JSON file.

The bundle carries the combined data/model point set in original
embedding units, per-point model error, the lifted model vertices, and
the wireframe edges as 1-based indices into the model array. Format
changes bump bundle_version; the JSON Schema ships in docs/.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .evaluate import augment_residuals, summarize_errors
from .exceptions import IdMismatchError, InputFormatError
from .ingest import EmbeddingTable, HighDTable, align
from .lift import FittedModel
from .scale import unscale_points

BUNDLE_VERSION = 1


def build_bundle(
    highd: HighDTable,
    emb: EmbeddingTable,
    model: FittedModel,
    labels: dict[int, str] | None = None,
) -> dict:
    """Assemble the bundle document for one fitted model.

    labels, when given, attach a categorical tag per point ID; IDs
    without a label get an empty string.
    """
    highd, emb = align(highd, emb)
    if not np.array_equal(emb.ids, model.scaled.ids):
        eset = set(emb.ids.tolist())
        mset = set(model.scaled.ids.tolist())
        raise IdMismatchError(missing_in_emb=mset - eset, missing_in_highd=eset - mset)
    residuals = augment_residuals(highd, model)
    summary = summarize_errors(highd, model)

    centroids_scaled = np.column_stack((model.bins.cx, model.bins.cy))
    centroids = unscale_points(model.scaled, centroids_scaled)

    points = []
    for i in range(highd.n):
        rec = {
            "ID": int(highd.ids[i]),
            "emb1": float(emb.coords[i, 0]),
            "emb2": float(emb.coords[i, 1]),
            "x": highd.coords[i].tolist(),
            "error": float(residuals.row_total[i]),
        }
        if labels is not None:
            rec["label"] = labels.get(int(highd.ids[i]), "")
        points.append(rec)

    model_rows = [
        {
            "h": int(model.bins.h[i]),
            "cx": float(centroids[i, 0]),
            "cy": float(centroids[i, 1]),
            "x": model.model_highd.means[i].tolist(),
        }
        for i in range(model.m)
    ]

    # edges index 1-based into the model array (h-ascending order)
    pos = {int(h): i + 1 for i, h in enumerate(model.bins.h)}
    edges = [
        {"from_reindexed": pos[int(f)], "to_reindexed": pos[int(t)]}
        for f, t in zip(model.mesh.from_h, model.mesh.to_h)
    ]

    return {
        "bundle_version": BUNDLE_VERSION,
        "metadata": {
            "n": highd.n,
            "p": highd.p,
            "m": model.m,
            "grid": {
                "b1": model.config.b1,
                "b2": model.config.b2,
                "a1": model.config.a1,
                "a2": model.config.a2,
                "q": model.config.q,
                "origin": list(model.config.origin),
            },
            "errors": {"Error": summary.error, "HBE": summary.hbe},
        },
        "points": points,
        "model": model_rows,
        "edges": edges,
    }


def save_bundle(bundle: dict, path) -> None:
    Path(path).write_text(json.dumps(bundle, indent=2) + "\n")


def load_labels(path) -> dict[int, str]:
    """Read an optional ID,label csv mapping points to categories."""
    import csv

    path = Path(path)
    if not path.exists():
        raise InputFormatError(f"labels file not found: {path}")
    out: dict[int, str] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or "ID" not in header or "label" not in header:
            raise InputFormatError("labels file needs ID and label columns")
        idp, lbp = header.index("ID"), header.index("label")
        for row in reader:
            if row:
                out[int(row[idp])] = row[lbp]
    return out
