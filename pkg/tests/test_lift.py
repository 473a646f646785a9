import numpy as np
import pytest

import liftmesh as lm
from liftmesh.exceptions import ConfigError, EmptyModelError
from liftmesh.hexgrid import BinAssignment


def assignment_of(ids, points, h):
    return BinAssignment(
        ids=np.asarray(ids, dtype=np.int64),
        points=np.asarray(points, dtype=np.float64),
        h=np.asarray(h, dtype=np.int64),
    )


class TestLiftBinMeans:
    def test_single_point_bin(self):
        highd = lm.highd_from_arrays([1], [[1.0, -2.0]])
        assign = assignment_of([1], [[0, 0]], [7])
        model = lm.lift_bin_means(highd, assign)
        assert model.h.tolist() == [7]
        assert model.means.tolist() == [[1.0, -2.0]]

    def test_two_point_mean(self):
        highd = lm.highd_from_arrays([1, 2], [[0.0, 0.0], [2.0, 4.0]])
        assign = assignment_of([1, 2], [[0, 0], [0, 0]], [3, 3])
        model = lm.lift_bin_means(highd, assign)
        assert model.means.tolist() == [[1.0, 2.0]]

    def test_matches_group_mean_oracle(self):
        rng = np.random.default_rng(21)
        n, p = 500, 5
        coords = rng.normal(size=(n, p))
        h = rng.integers(1, 40, size=n)
        highd = lm.highd_from_arrays(np.arange(1, n + 1), coords)
        assign = assignment_of(np.arange(1, n + 1), np.zeros((n, 2)), h)
        model = lm.lift_bin_means(highd, assign)
        # oracle: boolean-mask group means
        for i, hv in enumerate(model.h.tolist()):
            expected = coords[h == hv].mean(axis=0)
            assert np.allclose(model.means[i], expected, atol=1e-12)

    def test_mean_within_member_bounds(self):
        rng = np.random.default_rng(5)
        n = 200
        coords = rng.normal(size=(n, 3))
        h = rng.integers(1, 12, size=n)
        highd = lm.highd_from_arrays(np.arange(1, n + 1), coords)
        model = lm.lift_bin_means(
            highd, assignment_of(np.arange(1, n + 1), np.zeros((n, 2)), h)
        )
        for i, hv in enumerate(model.h.tolist()):
            members = coords[h == hv]
            assert np.all(model.means[i] >= members.min(axis=0) - 1e-12)
            assert np.all(model.means[i] <= members.max(axis=0) + 1e-12)


class TestFitModel:
    def test_scurve_structural(self, scurve_full):
        highd, layout = scurve_full
        model = lm.fit_model(highd, layout, b1=21, q=0.1, hd_thresh=0)
        assert model.m <= model.config.b
        assert np.array_equal(model.bins.h, model.model_highd.h)
        surviving = set(model.bins.h.tolist())
        for f, t in zip(model.mesh.from_h, model.mesh.to_h):
            assert int(f) in surviving and int(t) in surviving

    def test_minimal_grid(self):
        rng = np.random.default_rng(2)
        coords = rng.normal(size=(10, 2))
        emb = np.column_stack((rng.uniform(0, 1, 10), rng.uniform(0, 0.3, 10)))
        highd = lm.highd_from_arrays(np.arange(1, 11), coords)
        layout = lm.embedding_from_arrays(np.arange(1, 11), emb)
        model = lm.fit_model(highd, layout, b1=2, q=0.1, hd_thresh=0)
        assert model.config.b == 4
        assert model.m <= 4

    def test_hd_thresh_above_max_count(self, scurve_small):
        highd, layout = scurve_small
        with pytest.raises(EmptyModelError):
            lm.fit_model(highd, layout, b1=10, q=0.1, hd_thresh=10**9)

    def test_determinism_bit_identical(self, scurve_small):
        from liftmesh.serialize import model_to_dict
        import json

        highd, layout = scurve_small
        a = lm.fit_model(highd, layout, b1=10, q=0.1, hd_thresh=0)
        b = lm.fit_model(highd, layout, b1=10, q=0.1, hd_thresh=0)
        assert json.dumps(model_to_dict(a)) == json.dumps(model_to_dict(b))

    def test_constant_bins_reproduced_exactly(self, golden_cfg):
        # points sitting exactly on centroids, p-D constant per bin
        cents = lm.generate_centroids(golden_cfg)
        chosen = [10, 40, 90, 130]
        reps = 5
        emb_pts = np.repeat(
            np.column_stack((cents.cx[chosen], cents.cy[chosen])), reps, axis=0
        )
        consts = np.repeat(np.arange(1.0, len(chosen) + 1.0)[:, None], reps, axis=0)
        coords = np.hstack((consts, consts * 2))
        n = len(emb_pts)
        highd = lm.highd_from_arrays(np.arange(1, n + 1), coords)
        layout = lm.embedding_from_arrays(np.arange(1, n + 1), emb_pts)
        model = lm.fit_model(highd, layout, b1=21, q=0.1, hd_thresh=0)
        assert model.m == len(chosen)
        for i in range(model.m):
            assert model.model_highd.means[i, 0] * 2 == model.model_highd.means[i, 1]

    def test_retriangulate_path(self, scurve_small):
        highd, layout = scurve_small
        model = lm.fit_model(highd, layout, b1=10, q=0.1, hd_thresh=0, retriangulate=True)
        surviving = set(model.bins.h.tolist())
        for f, t in zip(model.mesh.from_h, model.mesh.to_h):
            assert int(f) in surviving and int(t) in surviving
        assert model.mesh.length.max() <= 1.5 * model.config.a1


class TestCombine:
    def test_cardinality_and_types(self, scurve_small, scurve_model):
        highd, _ = scurve_small
        combined = lm.combine_data_model(highd, scurve_model)
        assert combined.n_rows == highd.n + scurve_model.m
        assert (combined.types == "model").sum() == scurve_model.m

    def test_model_rows_equal_lift(self, scurve_small, scurve_model):
        highd, _ = scurve_small
        combined = lm.combine_data_model(highd, scurve_model)
        model_rows = combined.xs[combined.types == "model"]
        assert np.array_equal(model_rows, scurve_model.model_highd.means)

    def test_block_order(self, scurve_small, scurve_model):
        highd, _ = scurve_small
        combined = lm.combine_data_model(highd, scurve_model)
        n = highd.n
        assert np.array_equal(combined.ids[:n], highd.ids)
        assert np.all(combined.ids[n:] == -1)
        assert np.array_equal(combined.h[n:], scurve_model.bins.h)
        assert list(combined.h[n:]) == sorted(combined.h[n:])

    def test_dimension_mismatch(self, scurve_model):
        highd = lm.highd_from_arrays([1, 2], [[0, 0], [1, 1]])
        with pytest.raises(ConfigError):
            lm.combine_data_model(highd, scurve_model)

    def test_combine_all_schema(self, scurve_small, scurve_model):
        highd, layout = scurve_small
        combined = lm.combine_all(highd, layout, scurve_model)
        assert combined.emb is not None
        assert combined.errors is None
        assert combined.n_rows == highd.n + scurve_model.m
        # data rows carry the original layout coordinates
        assert np.array_equal(combined.emb[: highd.n], layout.coords)

    def test_combine_all_with_residuals(self, scurve_small, scurve_model):
        highd, layout = scurve_small
        residuals = lm.augment_residuals(highd, scurve_model)
        combined = lm.combine_all(highd, layout, scurve_model, residuals)
        assert combined.errors is not None
        n = highd.n
        assert np.array_equal(combined.errors[:n], residuals.row_total)
        assert np.all(combined.errors[n:] == 0.0)

    def test_combine_all_centroids_in_original_units(self, scurve_small, scurve_model):
        from liftmesh.scale import unscale_points

        highd, layout = scurve_small
        combined = lm.combine_all(highd, layout, scurve_model)
        n = highd.n
        expected = unscale_points(
            scurve_model.scaled,
            np.column_stack((scurve_model.bins.cx, scurve_model.bins.cy)),
        )
        assert np.allclose(combined.emb[n:], expected, atol=1e-12)
