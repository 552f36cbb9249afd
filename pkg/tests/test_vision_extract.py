"""Pointing-angle fitting, full feature extraction, and image round-trips."""

import numpy as np
import pytest

from pointgwr.features import FeatureVector
from pointgwr.vision import (
    extract_features,
    features_from_geometry,
    detect_fingertip,
    load_mask,
    load_rgb,
    pointing_angle,
    save_mask,
    save_rgb,
)


def _wedge_mask(tip=(180, 100), half_slope=0.3):
    yy, xx = np.mgrid[0:200, 0:220]
    tip_x, tip_y = tip
    body = (xx >= 40) & (xx <= 120) & (yy >= 60) & (yy <= 140)
    wedge = (
        (xx >= 118)
        & (xx <= tip_x)
        & (np.abs(yy - tip_y) <= half_slope * (tip_x - xx))
    )
    return body | wedge


class TestPointingAngle:
    def test_horizontal_line_is_exactly_zero(self):
        pts = np.stack([np.arange(50.0), np.full(50, 30.0)], axis=1)
        assert pointing_angle(pts, np.array([49.0, 30.0])) == 0.0

    def test_vertical_line_is_ninety(self):
        pts = np.stack([np.full(50, 10.0), np.arange(50.0)], axis=1)
        assert pointing_angle(pts, np.array([10.0, 0.0])) == pytest.approx(90.0)

    def test_diagonal_line(self):
        # image y grows downward, so x=y runs at 135 degrees when folded
        t = np.arange(60.0)
        pts = np.stack([t, t], axis=1)
        assert pointing_angle(pts, pts[-1]) == pytest.approx(135.0)

    def test_result_folds_into_range(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            pts = rng.uniform(0, 100, (30, 2))
            a = pointing_angle(pts, pts[0])
            assert 0.0 <= a < 180.0

    def test_near_points_outvote_far_points(self):
        # a horizontal run at the tip plus a vertical run 400 px away:
        # the exponential weights make the near run decide the angle
        near = np.stack([np.arange(0.0, 30.0), np.zeros(30)], axis=1)
        far = np.stack([np.full(30, 430.0), np.arange(0.0, 30.0)], axis=1)
        a = pointing_angle(np.vstack([near, far]), np.array([0.0, 0.0]))
        assert a < 10.0 or a > 170.0


class TestExtractFeatures:
    def test_wedge_scene(self):
        feats = extract_features(_wedge_mask())
        assert isinstance(feats, FeatureVector)
        # finger axis is horizontal and the hand mass sits left of the
        # tip, so the folded angle is near 0
        assert feats.alpha < 15.0 or feats.alpha > 165.0
        assert abs(feats.p_x - 180.0) <= 2.0
        assert abs(feats.p_y - 100.0) <= 2.0
        # centroid falls inside the body rectangle, left of the tip
        assert 40.0 < feats.c_x < 140.0
        assert 60.0 < feats.c_y < 140.0

    def test_none_propagates(self):
        assert extract_features(np.zeros((50, 50), dtype=bool)) is None

    def test_from_geometry_matches_extract(self):
        mask = _wedge_mask()
        geometry = detect_fingertip(mask)
        assert features_from_geometry(geometry) == extract_features(mask)


class TestImageIO:
    def test_rgb_png_round_trip(self, tmp_path):
        rng = np.random.default_rng(11)
        img = rng.integers(0, 256, (20, 30, 3)).astype(np.uint8)
        path = tmp_path / "scene.png"
        save_rgb(path, img)
        np.testing.assert_array_equal(load_rgb(path), img)

    def test_rgb_ppm_round_trip(self, tmp_path):
        rng = np.random.default_rng(12)
        img = rng.integers(0, 256, (15, 10, 3)).astype(np.uint8)
        path = tmp_path / "scene.ppm"
        save_rgb(path, img)
        assert path.read_bytes().startswith(b"P6")
        np.testing.assert_array_equal(load_rgb(path), img)

    def test_mask_round_trip_bool(self, tmp_path):
        mask = np.zeros((12, 16), dtype=bool)
        mask[3:9, 4:11] = True
        path = tmp_path / "mask.png"
        save_mask(path, mask)
        got = load_mask(path)
        assert got.dtype == np.uint8
        np.testing.assert_array_equal(got, mask.astype(np.uint8) * 255)

    def test_mask_round_trip_uint8(self, tmp_path):
        mask = np.arange(48, dtype=np.uint8).reshape(6, 8)
        path = tmp_path / "gray.png"
        save_mask(path, mask)
        np.testing.assert_array_equal(load_mask(path), mask)

    def test_shape_validation(self, tmp_path):
        with pytest.raises(ValueError):
            save_rgb(tmp_path / "bad.png", np.zeros((4, 4), dtype=np.uint8))
        with pytest.raises(ValueError):
            save_mask(tmp_path / "bad.png", np.zeros((4, 4, 3), dtype=np.uint8))
