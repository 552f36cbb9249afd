"""Color conversions against independent scalar oracles."""

import colorsys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pointgwr.vision import rgb_to_hsv, rgb_to_ycbcr


def _ycbcr_oracle(r, g, b):
    """Straight scalar transcription of the fixed-matrix definition."""
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    out = []
    for v in (y, cb, cr):
        q = np.floor(v + 0.5)  # round half up
        out.append(int(min(255.0, max(0.0, q))))
    return tuple(out)


class TestYCbCr:
    def test_reference_colors(self):
        img = np.array(
            [[[0, 0, 0], [255, 255, 255], [255, 0, 0], [0, 255, 0], [0, 0, 255]]],
            dtype=np.uint8,
        )
        got = rgb_to_ycbcr(img)[0]
        assert tuple(got[0]) == (0, 128, 128)
        assert tuple(got[1]) == (255, 128, 128)
        assert tuple(got[2]) == (76, 85, 255)    # Cr = 255.5 clamps to 255
        assert tuple(got[3]) == (150, 44, 21)
        assert tuple(got[4]) == (29, 255, 107)

    def test_half_values_round_up(self):
        # pure red: Cr = 128 + 0.5 * 1 = 128.5, must round to 129
        got = rgb_to_ycbcr(np.array([[[1, 0, 0]]], dtype=np.uint8))[0, 0]
        assert got[2] == 129

    def test_agrees_with_scalar_oracle(self):
        rng = np.random.default_rng(8)
        pixels = rng.integers(0, 256, (5000, 3)).astype(np.uint8)
        got = rgb_to_ycbcr(pixels.reshape(-1, 1, 3)).reshape(-1, 3)
        for px, row in zip(pixels, got):
            assert tuple(row) == _ycbcr_oracle(*(int(v) for v in px))

    def test_shape_preserved_and_validated(self):
        img = np.zeros((4, 6, 3), dtype=np.uint8)
        assert rgb_to_ycbcr(img).shape == (4, 6, 3)
        with pytest.raises(ValueError):
            rgb_to_ycbcr(np.zeros((4, 6, 4)))


class TestHsv:
    def test_reference_colors(self):
        img = np.array(
            [[[255, 0, 0], [0, 255, 0], [0, 0, 255], [255, 255, 0], [0, 0, 0]]],
            dtype=np.uint8,
        )
        h, s, v = np.moveaxis(rgb_to_hsv(img)[0], -1, 0)
        assert h.tolist() == [0.0, 120.0, 240.0, 60.0, 0.0]
        assert s.tolist() == [1.0, 1.0, 1.0, 1.0, 0.0]
        assert v.tolist() == [1.0, 1.0, 1.0, 1.0, 0.0]

    @given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
    def test_agrees_with_colorsys(self, r, g, b):
        got = rgb_to_hsv(np.array([[[r, g, b]]], dtype=np.uint8))[0, 0]
        want_h, want_s, want_v = colorsys.rgb_to_hsv(r / 255, g / 255, b / 255)
        assert got[0] == pytest.approx((want_h * 360.0) % 360.0, abs=1e-9)
        assert got[1] == pytest.approx(want_s, abs=1e-12)
        assert got[2] == pytest.approx(want_v, abs=1e-12)

    def test_hue_range(self):
        rng = np.random.default_rng(9)
        img = rng.integers(0, 256, (64, 64, 3)).astype(np.uint8)
        hsv = rgb_to_hsv(img)
        assert hsv[..., 0].min() >= 0.0 and hsv[..., 0].max() < 360.0
        assert hsv[..., 1:].min() >= 0.0 and hsv[..., 1:].max() <= 1.0

    def test_gray_pixels_have_zero_saturation(self):
        img = np.full((2, 2, 3), 77, dtype=np.uint8)
        hsv = rgb_to_hsv(img)
        assert np.all(hsv[..., 0] == 0.0)
        assert np.all(hsv[..., 1] == 0.0)
        assert np.allclose(hsv[..., 2], 77 / 255)
