"""JSON persistence for fitted models.

One self-contained document per model, loadable by the same version.
Floats go through Python's shortest-round-trip repr, so save/load is
exact and re-serialization is byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import InputFormatError
from .hexgrid import BinTable, GridConfig
from .ingest import _freeze
from .lift import FitParams, FittedModel, HighDModel
from .mesh import WireMesh
from .scale import ScaledEmbedding

MODEL_VERSION = 1


def model_to_dict(model: FittedModel) -> dict:
    return {
        "model_version": MODEL_VERSION,
        "scaled": {
            "ids": model.scaled.ids.tolist(),
            "points": model.scaled.points.tolist(),
            "lim1": list(model.scaled.lim1),
            "lim2": list(model.scaled.lim2),
            "y2max": model.scaled.y2max,
        },
        "config": {
            "b1": model.config.b1,
            "b2": model.config.b2,
            "a1": model.config.a1,
            "a2": model.config.a2,
            "q": model.config.q,
            "origin": list(model.config.origin),
        },
        "bins": {
            "h": model.bins.h.tolist(),
            "c_x": model.bins.cx.tolist(),
            "c_y": model.bins.cy.tolist(),
            "n_h": model.bins.n_h.tolist(),
            "w_h": model.bins.w_h.tolist(),
        },
        "model_highd": {
            "h": model.model_highd.h.tolist(),
            "means": model.model_highd.means.tolist(),
        },
        "mesh": {
            "from": model.mesh.from_h.tolist(),
            "to": model.mesh.to_h.tolist(),
            "x_from": model.mesh.x_from.tolist(),
            "y_from": model.mesh.y_from.tolist(),
            "x_to": model.mesh.x_to.tolist(),
            "y_to": model.mesh.y_to.tolist(),
            "length": model.mesh.length.tolist(),
            "from_count": model.mesh.from_count.tolist(),
            "to_count": model.mesh.to_count.tolist(),
            "from_reindexed": model.mesh.from_reindexed.tolist(),
            "to_reindexed": model.mesh.to_reindexed.tolist(),
        },
        "params": {
            "hd_thresh": model.params.hd_thresh,
            "md_thresh": model.params.md_thresh,
            "edge_cutoff_factor": model.params.edge_cutoff_factor,
            "retriangulate": model.params.retriangulate,
        },
    }


def _arr(values, dtype) -> np.ndarray:
    return _freeze(np.asarray(values, dtype=dtype))


def model_from_dict(doc: dict) -> FittedModel:
    version = doc.get("model_version")
    if version != MODEL_VERSION:
        raise InputFormatError(f"unsupported model_version {version!r}")
    s = doc["scaled"]
    scaled = ScaledEmbedding(
        ids=_arr(s["ids"], np.int64),
        points=_arr(s["points"], np.float64).reshape(-1, 2),
        lim1=tuple(s["lim1"]),
        lim2=tuple(s["lim2"]),
        y2max=float(s["y2max"]),
    )
    c = doc["config"]
    config = GridConfig(
        b1=int(c["b1"]), b2=int(c["b2"]), a1=float(c["a1"]), a2=float(c["a2"]),
        q=float(c["q"]), origin=tuple(c["origin"]),
    )
    b = doc["bins"]
    bins = BinTable(
        h=_arr(b["h"], np.int64),
        cx=_arr(b["c_x"], np.float64),
        cy=_arr(b["c_y"], np.float64),
        n_h=_arr(b["n_h"], np.int64),
        w_h=_arr(b["w_h"], np.float64),
    )
    hm = doc["model_highd"]
    means = _arr(hm["means"], np.float64)
    model_highd = HighDModel(
        h=_arr(hm["h"], np.int64),
        means=means.reshape(len(hm["h"]), -1),
    )
    e = doc["mesh"]
    mesh = WireMesh(
        from_h=_arr(e["from"], np.int64),
        to_h=_arr(e["to"], np.int64),
        x_from=_arr(e["x_from"], np.float64),
        y_from=_arr(e["y_from"], np.float64),
        x_to=_arr(e["x_to"], np.float64),
        y_to=_arr(e["y_to"], np.float64),
        length=_arr(e["length"], np.float64),
        from_count=_arr(e["from_count"], np.int64),
        to_count=_arr(e["to_count"], np.int64),
        from_reindexed=_arr(e["from_reindexed"], np.int64),
        to_reindexed=_arr(e["to_reindexed"], np.int64),
    )
    p = doc["params"]
    params = FitParams(
        hd_thresh=float(p["hd_thresh"]),
        md_thresh=None if p["md_thresh"] is None else float(p["md_thresh"]),
        edge_cutoff_factor=float(p["edge_cutoff_factor"]),
        retriangulate=bool(p["retriangulate"]),
    )
    return FittedModel(
        scaled=scaled, config=config, bins=bins,
        model_highd=model_highd, mesh=mesh, params=params,
    )


def save_model(model: FittedModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")


def load_model(path) -> FittedModel:
    path = Path(path)
    if not path.exists():
        raise InputFormatError(f"model file not found: {path}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"model file is not valid JSON: {exc}") from None
    return model_from_dict(doc)
