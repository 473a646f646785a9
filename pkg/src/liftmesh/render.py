"""Static SVG views of a fitted model.

Four views mirror the standard diagnostic panels: the full hexagon
grid, the hexagons that survived pruning, the full-lattice wireframe,
and the pruned wireframe. Geometry is drawn in scaled-embedding
coordinates with the y axis flipped into SVG screen space.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConfigError
from .hexgrid import BinTable, CentroidTable, generate_centroids, generate_hex_vertices
from .lift import FittedModel
from .mesh import WireMesh, extract_edges, triangulate_centroids

VIEWS = ("hexgrid-full", "hexgrid-data", "trimesh-full", "trimesh-data")

_WIDTH = 800.0
_MARGIN = 20.0


class _Canvas:
    """Accumulates SVG elements over a data-space bounding box."""

    def __init__(self, xs: np.ndarray, ys: np.ndarray) -> None:
        self.min_x = float(xs.min()) if xs.size else 0.0
        self.max_x = float(xs.max()) if xs.size else 1.0
        self.min_y = float(ys.min()) if ys.size else 0.0
        self.max_y = float(ys.max()) if ys.size else 1.0
        span_x = self.max_x - self.min_x or 1.0
        span_y = self.max_y - self.min_y or 1.0
        self.scale = (_WIDTH - 2 * _MARGIN) / span_x
        self.height = span_y * self.scale + 2 * _MARGIN
        self.elements: list[str] = []

    def to_screen(self, x: float, y: float) -> tuple[float, float]:
        sx = _MARGIN + (x - self.min_x) * self.scale
        sy = _MARGIN + (self.max_y - y) * self.scale
        return sx, sy

    def polygon(self, pts) -> None:
        coords = " ".join(
            "%.6f,%.6f" % self.to_screen(float(x), float(y)) for x, y in pts
        )
        self.elements.append(
            f'<polygon points="{coords}" fill="none" stroke="#444444" stroke-width="1"/>'
        )

    def line(self, x1, y1, x2, y2) -> None:
        a = self.to_screen(float(x1), float(y1))
        b = self.to_screen(float(x2), float(y2))
        self.elements.append(
            '<line x1="%.6f" y1="%.6f" x2="%.6f" y2="%.6f" '
            'stroke="#444444" stroke-width="1"/>' % (a[0], a[1], b[0], b[1])
        )

    def document(self) -> str:
        body = "\n".join(self.elements)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
            f'height="{self.height:.6f}" '
            f'viewBox="0 0 {_WIDTH:.0f} {self.height:.6f}">\n'
            f"{body}\n</svg>\n"
        )


def _full_mesh(model: FittedModel) -> WireMesh:
    centroids = generate_centroids(model.config)
    # counts are irrelevant for drawing; mark every lattice bin empty
    full = BinTable(
        h=centroids.h,
        cx=centroids.cx,
        cy=centroids.cy,
        n_h=np.zeros(centroids.h.size, dtype=np.int64),
        w_h=np.zeros(centroids.h.size, dtype=np.float64),
    )
    tri = triangulate_centroids(full)
    return extract_edges(tri, model.config.a1, model.params.edge_cutoff_factor)


def _hexgrid_svg(h: np.ndarray, cx: np.ndarray, cy: np.ndarray, a1: float) -> str:
    verts = generate_hex_vertices(CentroidTable(h=h, cx=cx, cy=cy), a1)
    canvas = _Canvas(verts.vertices[:, :, 0].ravel(), verts.vertices[:, :, 1].ravel())
    for i in range(verts.h.size):
        canvas.polygon(verts.vertices[i])
    return canvas.document()


def _trimesh_svg(mesh: WireMesh) -> str:
    xs = np.concatenate((mesh.x_from, mesh.x_to))
    ys = np.concatenate((mesh.y_from, mesh.y_to))
    canvas = _Canvas(xs, ys)
    for i in range(mesh.n_edges):
        canvas.line(mesh.x_from[i], mesh.y_from[i], mesh.x_to[i], mesh.y_to[i])
    return canvas.document()


def render_view(model: FittedModel, view: str) -> str:
    """SVG document for one of the four named views."""
    if view == "hexgrid-full":
        centroids = generate_centroids(model.config)
        return _hexgrid_svg(centroids.h, centroids.cx, centroids.cy, model.config.a1)
    if view == "hexgrid-data":
        return _hexgrid_svg(model.bins.h, model.bins.cx, model.bins.cy, model.config.a1)
    if view == "trimesh-full":
        return _trimesh_svg(_full_mesh(model))
    if view == "trimesh-data":
        return _trimesh_svg(model.mesh)
    raise ConfigError(f"unknown view {view!r}; expected one of {', '.join(VIEWS)}")
