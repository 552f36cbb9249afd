"""Feature vectors, angle folding, and scaling bounds."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pointgwr.features import FeatureBounds, FeatureVector, fold_angle_deg


class TestFoldAngle:
    def test_cardinal_directions(self):
        assert fold_angle_deg(1, 0) == 0.0
        assert fold_angle_deg(-1, 0) == 0.0  # opposite direction, same line
        assert fold_angle_deg(0, -1) == 90.0  # image-up
        assert fold_angle_deg(0, 1) == 90.0

    def test_diagonals_fold_to_standard_orientation(self):
        # image y grows downward, so dy_img = -1 slopes up at +45
        assert fold_angle_deg(1, -1) == pytest.approx(45.0)
        assert fold_angle_deg(-1, 1) == pytest.approx(45.0)
        assert fold_angle_deg(1, 1) == pytest.approx(135.0)

    @given(
        st.floats(-1e3, 1e3, allow_nan=False),
        st.floats(-1e3, 1e3, allow_nan=False),
    )
    def test_range_and_reversal_invariance(self, dx, dy):
        if dx == 0 and dy == 0:
            return
        a = fold_angle_deg(dx, dy)
        assert 0.0 <= a < 180.0
        assert fold_angle_deg(-dx, -dy) == pytest.approx(a, abs=1e-9) or (
            # 0 and 180 are the same folded angle
            min(a, 180 - a) < 1e-9
        )


class TestFeatureVector:
    def test_array_round_trip(self):
        fv = FeatureVector(30.0, 1.0, 2.0, 3.0, 4.0)
        assert FeatureVector.from_array(fv.as_array()) == fv

    def test_from_array_shape_checked(self):
        with pytest.raises(ValueError):
            FeatureVector.from_array(np.zeros(4))


class TestFeatureBounds:
    def test_empty_range_rejected(self):
        with pytest.raises(ValueError):
            FeatureBounds(x=(5.0, 5.0))

    def test_normalize_maps_bounds_to_unit_interval(self):
        bounds = FeatureBounds(alpha=(0, 180), x=(100, 300), y=(50, 150))
        lo = bounds.normalize(np.array([0, 100, 50, 100, 50], dtype=float))
        hi = bounds.normalize(np.array([180, 300, 150, 300, 150], dtype=float))
        assert np.allclose(lo, 0.0)
        assert np.allclose(hi, 1.0)

    def test_out_of_bounds_values_land_outside_unit_range(self):
        bounds = FeatureBounds(x=(100, 300), y=(50, 150))
        v = bounds.normalize(np.array([190.0, 500.0, 25.0, 99.0, 160.0]))
        assert v[1] > 1.0 and v[2] < 0.0 and v[3] < 0.0 and v[4] > 1.0

    @given(
        st.floats(0, 180, exclude_max=True),
        st.floats(0, 1400),
        st.floats(0, 1500),
        st.floats(0, 1400),
        st.floats(0, 1500),
    )
    def test_round_trip(self, alpha, cx, cy, px, py):
        bounds = FeatureBounds()
        v = np.array([alpha, cx, cy, px, py])
        assert np.allclose(bounds.denormalize(bounds.normalize(v)), v, atol=1e-9)

    def test_dict_round_trip(self):
        bounds = FeatureBounds(alpha=(0, 90), x=(10, 20), y=(30, 40))
        assert FeatureBounds.from_dict(bounds.as_dict()) == bounds

    def test_image_bounds(self):
        bounds = FeatureBounds.image_bounds(640, 480)
        assert bounds.x == (0.0, 640.0)
        assert bounds.y == (0.0, 480.0)
