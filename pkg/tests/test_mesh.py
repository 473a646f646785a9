import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import liftmesh as lm
from liftmesh.exceptions import ConfigError, EmptyModelError
from liftmesh.hexgrid import BinTable


def bins_from_points(points, counts=None):
    points = np.asarray(points, dtype=np.float64)
    n = len(points)
    counts = np.zeros(n, dtype=np.int64) if counts is None else np.asarray(counts, dtype=np.int64)
    w = counts / counts.max() if counts.max() > 0 else counts.astype(np.float64)
    return BinTable(
        h=np.arange(1, n + 1, dtype=np.int64),
        cx=points[:, 0],
        cy=points[:, 1],
        n_h=counts,
        w_h=w,
    )


def full_lattice_bins(cfg, counts=None):
    cents = lm.generate_centroids(cfg)
    n_h = np.zeros(cfg.b, dtype=np.int64) if counts is None else counts
    w_h = n_h / n_h.max() if n_h.max() > 0 else n_h.astype(np.float64)
    return BinTable(h=cents.h, cx=cents.cx, cy=cents.cy, n_h=n_h, w_h=w_h)


def circumcircle(a, b, c):
    """Center and squared radius of the circle through three points."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
    r2 = (ax - ux) ** 2 + (ay - uy) ** 2
    return (ux, uy), r2


def assert_delaunay(points, triangles, tol=1e-9):
    """Empty-circumcircle oracle: no point strictly inside any circumcircle."""
    for t in triangles:
        (ux, uy), r2 = circumcircle(points[t[0]], points[t[1]], points[t[2]])
        d2 = (points[:, 0] - ux) ** 2 + (points[:, 1] - uy) ** 2
        inside = d2 < r2 - tol * max(r2, 1.0)
        inside[t] = False
        assert not inside.any(), f"vertex inside circumcircle of triangle {t}"


class TestTriangulate:
    def test_three_points_single_triangle(self):
        tri = lm.triangulate_centroids(bins_from_points([(0, 0), (1, 0), (0, 1)]))
        assert tri.triangles.shape == (1, 3)

    def test_four_points_brute_force_oracle(self):
        pts = np.array([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 2.0)])
        tri = lm.triangulate_centroids(bins_from_points(pts))
        assert len(tri.triangles) == 2
        edges = set()
        for t in tri.triangles:
            for i, j in itertools.combinations(sorted(t), 2):
                edges.add((i, j))
        assert len(edges) == 5
        assert_delaunay(pts, tri.triangles)

    def test_too_few_points(self):
        with pytest.raises(ConfigError):
            lm.triangulate_centroids(bins_from_points([(0, 0), (1, 1)]))

    def test_collinear_points(self):
        with pytest.raises(ConfigError):
            lm.triangulate_centroids(bins_from_points([(0, 0), (1, 1), (2, 2), (3, 3)]))

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), n=st.integers(4, 50))
    def test_empty_circumcircle_property(self, seed, n):
        rng = np.random.default_rng(seed)
        pts = rng.uniform(size=(n, 2))
        tri = lm.triangulate_centroids(bins_from_points(pts))
        assert_delaunay(pts, tri.triangles)

    def test_full_lattice_edges_all_a1(self, golden_cfg):
        # exhaustive edge scan: the staggered lattice mesh is the
        # nearest-neighbor graph, every edge of length a1
        bins = full_lattice_bins(golden_cfg)
        tri = lm.triangulate_centroids(bins)
        mesh = lm.extract_edges(tri, golden_cfg.a1)
        assert np.all(np.abs(mesh.length - golden_cfg.a1) <= 1e-9)


class TestExtractEdges:
    def test_golden_first_edge(self, golden_cfg):
        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        assert mesh.from_h[0] == 1 and mesh.to_h[0] == 2
        assert mesh.x_from[0] == pytest.approx(-0.1, abs=1e-3)
        assert mesh.y_from[0] == pytest.approx(-0.116, abs=1e-3)
        assert mesh.x_to[0] == pytest.approx(-0.0413, abs=1e-3)
        assert mesh.y_to[0] == pytest.approx(-0.116, abs=1e-3)
        assert mesh.from_count[0] == 0 and mesh.to_count[0] == 0

    def test_golden_edge_22_44_length(self, golden_cfg):
        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        i = np.flatnonzero((mesh.from_h == 22) & (mesh.to_h == 44))
        assert i.size == 1
        assert mesh.length[i[0]] == pytest.approx(golden_cfg.a1, abs=1e-4)

    def test_undirected_unique(self, golden_cfg):
        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        pairs = set(zip(mesh.from_h.tolist(), mesh.to_h.tolist()))
        assert len(pairs) == mesh.n_edges
        assert all(f < t for f, t in pairs)
        assert not any((t, f) in pairs for f, t in pairs)

    def test_edge_count_matches_triangle_pairs(self):
        rng = np.random.default_rng(4)
        pts = rng.uniform(size=(40, 2))
        tri = lm.triangulate_centroids(bins_from_points(pts))
        mesh = lm.extract_edges(tri, a1=10.0)  # huge a1: nothing cut
        distinct = set()
        for t in tri.triangles:
            for i, j in itertools.combinations(sorted(t.tolist()), 2):
                distinct.add((i, j))
        assert mesh.n_edges == len(distinct)

    def test_edge_count_accounts_for_cutoff(self):
        rng = np.random.default_rng(6)
        pts = rng.uniform(size=(40, 2))
        tri = lm.triangulate_centroids(bins_from_points(pts))
        a1 = 0.1
        mesh = lm.extract_edges(tri, a1=a1, edge_cutoff_factor=1.5)
        distinct = {}
        for t in tri.triangles:
            for i, j in itertools.combinations(sorted(t.tolist()), 2):
                d = np.hypot(pts[i, 0] - pts[j, 0], pts[i, 1] - pts[j, 1])
                distinct[(i, j)] = d
        kept = [pair for pair, d in distinct.items() if d <= 1.5 * a1]
        assert mesh.n_edges == len(kept)

    def test_cutoff_removes_long_edges(self, golden_cfg):
        bins = full_lattice_bins(golden_cfg)
        tri = lm.triangulate_centroids(bins)
        raw = lm.extract_edges(tri, golden_cfg.a1, edge_cutoff_factor=100.0)
        cut = lm.extract_edges(tri, golden_cfg.a1)
        assert raw.n_edges > cut.n_edges
        assert raw.length.max() > 1.5 * golden_cfg.a1
        assert cut.length.max() <= 1.5 * golden_cfg.a1

    def test_interior_degree_six(self, golden_cfg):
        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        b1, b2 = golden_cfg.b1, golden_cfg.b2
        deg = np.zeros(golden_cfg.b + 1, dtype=int)
        for h in np.concatenate((mesh.from_h, mesh.to_h)):
            deg[h] += 1
        for idx in range(golden_cfg.b):
            r, c = divmod(idx, b1)
            if 1 <= r < b2 - 1 and 1 <= c < b1 - 1:
                assert deg[idx + 1] == 6


class TestReindex:
    def test_identity_when_nothing_removed(self, golden_cfg):
        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        i = np.flatnonzero(mesh.from_h == 22)[0]
        assert mesh.from_reindexed[i] == 22

    def test_compaction_after_removal(self, golden_cfg):
        from liftmesh.mesh import filter_mesh_to_bins

        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        surviving = bins.h[~np.isin(bins.h, [1, 2])]
        filtered = filter_mesh_to_bins(mesh, surviving)
        assert filtered.from_h.min() >= 3
        i = np.flatnonzero(filtered.from_h == 3)
        assert filtered.from_reindexed[i[0]] == 1

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1))
    def test_contiguous_after_random_filtering(self, seed, golden_cfg):
        from liftmesh.mesh import filter_mesh_to_bins

        bins = full_lattice_bins(golden_cfg)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        rng = np.random.default_rng(seed)
        surviving = bins.h[rng.uniform(size=bins.b) > 0.4]
        filtered = filter_mesh_to_bins(mesh, surviving)
        if filtered.n_edges == 0:
            return
        ids = np.unique(
            np.concatenate((filtered.from_reindexed, filtered.to_reindexed))
        )
        assert ids.tolist() == list(range(1, ids.size + 1))


class TestPrune:
    def _fitted_lattice(self, golden_cfg, seed=9, n=400):
        rng = np.random.default_rng(seed)
        counts = np.zeros(golden_cfg.b, dtype=np.int64)
        occupied = rng.choice(golden_cfg.b, size=60, replace=False)
        counts[occupied] = rng.integers(1, 20, size=60)
        bins = full_lattice_bins(golden_cfg, counts)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        return bins, mesh

    def test_zero_threshold_keeps_nonempty(self, golden_cfg):
        bins, mesh = self._fitted_lattice(golden_cfg)
        pruned_bins, pruned_mesh = lm.prune_model(bins, mesh, hd_thresh=0)
        assert np.array_equal(pruned_bins.h, bins.h[bins.n_h > 0])
        assert np.all(pruned_bins.n_h > 0)

    def test_identity_when_all_occupied(self, golden_cfg):
        counts = np.ones(golden_cfg.b, dtype=np.int64)
        bins = full_lattice_bins(golden_cfg, counts)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        pruned_bins, pruned_mesh = lm.prune_model(bins, mesh, hd_thresh=0)
        assert np.array_equal(pruned_bins.h, bins.h)
        assert pruned_mesh.n_edges == mesh.n_edges

    def test_removed_endpoint_drops_edges(self, golden_cfg):
        bins, mesh = self._fitted_lattice(golden_cfg)
        pruned_bins, pruned_mesh = lm.prune_model(bins, mesh, hd_thresh=0)
        # graph oracle: every surviving edge has both endpoints surviving
        surviving = set(pruned_bins.h.tolist())
        for f, t in zip(pruned_mesh.from_h, pruned_mesh.to_h):
            assert int(f) in surviving and int(t) in surviving
        if pruned_mesh.n_edges:
            ids = np.unique(
                np.concatenate((pruned_mesh.from_reindexed, pruned_mesh.to_reindexed))
            )
            assert ids.tolist() == list(range(1, ids.size + 1))

    def test_idempotent_hd_pruning(self, golden_cfg):
        bins, mesh = self._fitted_lattice(golden_cfg)
        once_bins, once_mesh = lm.prune_model(bins, mesh, hd_thresh=2)
        twice_bins, twice_mesh = lm.prune_model(once_bins, once_mesh, hd_thresh=2)
        assert np.array_equal(once_bins.h, twice_bins.h)
        assert np.array_equal(once_mesh.from_h, twice_mesh.from_h)
        assert np.array_equal(once_mesh.from_reindexed, twice_mesh.from_reindexed)

    def test_md_pruning_removes_isolated_bins(self, golden_cfg):
        counts = np.zeros(golden_cfg.b, dtype=np.int64)
        counts[300] = 50      # lone occupied bin in an empty neighborhood
        counts[0] = 50
        counts[1] = 50
        counts[21] = 50       # cluster in the corner supports itself
        bins = full_lattice_bins(golden_cfg, counts)
        mesh = lm.extract_edges(lm.triangulate_centroids(bins), golden_cfg.a1)
        pruned_bins, _ = lm.prune_model(
            bins, mesh, hd_thresh=0, md_thresh=0.2, b1=golden_cfg.b1
        )
        assert 301 not in pruned_bins.h.tolist()
        assert 1 in pruned_bins.h.tolist()

    def test_empty_model_error(self, golden_cfg):
        bins, mesh = self._fitted_lattice(golden_cfg)
        with pytest.raises(EmptyModelError):
            lm.prune_model(bins, mesh, hd_thresh=10**9)
