import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import liftmesh as lm
from liftmesh.exceptions import ConfigError
from liftmesh.render import render_view

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def golden_grid_model():
    # embedding whose scaled ratio reproduces the reference grid exactly
    rng = np.random.default_rng(77)
    n = 300
    emb = np.column_stack(
        (rng.uniform(0, 1, n), rng.uniform(0, 1.156801, n))
    )
    emb[0] = (0.0, 0.0)
    emb[1] = (1.0, 1.156801)
    highd = lm.highd_from_arrays(np.arange(1, n + 1), rng.normal(size=(n, 3)))
    layout = lm.embedding_from_arrays(np.arange(1, n + 1), emb)
    return lm.fit_model(highd, layout, b1=21, q=0.1, hd_thresh=0)


def parse(svg: str):
    root = ET.fromstring(svg)
    assert root.tag == f"{SVG_NS}svg"
    return root


def all_coords_finite(root) -> bool:
    for poly in root.iter(f"{SVG_NS}polygon"):
        for pair in poly.get("points").split():
            x, y = pair.split(",")
            if not (math.isfinite(float(x)) and math.isfinite(float(y))):
                return False
    for line in root.iter(f"{SVG_NS}line"):
        for attr in ("x1", "y1", "x2", "y2"):
            if not math.isfinite(float(line.get(attr))):
                return False
    return True


def test_hexgrid_full_588_polygons(golden_grid_model):
    root = parse(render_view(golden_grid_model, "hexgrid-full"))
    polys = list(root.iter(f"{SVG_NS}polygon"))
    assert len(polys) == 588
    assert all_coords_finite(root)


def test_hexgrid_data_polygon_count(golden_grid_model):
    root = parse(render_view(golden_grid_model, "hexgrid-data"))
    polys = list(root.iter(f"{SVG_NS}polygon"))
    assert len(polys) == golden_grid_model.m


def test_trimesh_data_line_count(golden_grid_model):
    root = parse(render_view(golden_grid_model, "trimesh-data"))
    lines = list(root.iter(f"{SVG_NS}line"))
    assert len(lines) == golden_grid_model.mesh.n_edges
    assert all_coords_finite(root)


def test_trimesh_full_parses(golden_grid_model):
    root = parse(render_view(golden_grid_model, "trimesh-full"))
    lines = list(root.iter(f"{SVG_NS}line"))
    assert len(lines) > 0
    assert all_coords_finite(root)


def test_unknown_view_rejected(golden_grid_model):
    with pytest.raises(ConfigError):
        render_view(golden_grid_model, "sideways")
