"""Hue-band object segmentation on synthetic RGB scenes."""

import numpy as np
import pytest

from pointgwr.boxes import BoxLabel
from pointgwr.vision import (
    DEFAULT_HUE_RANGES,
    MIN_OBJECT_AREA_PX,
    DetectedObject,
    HueRange,
    color_mask,
    segment_color_objects,
)

# saturated swatches that land squarely inside the default hue bands
_SWATCH = {
    "red": (220, 30, 30),
    "yellow": (230, 210, 20),
    "green": (30, 200, 60),
    "blue": (30, 80, 230),
}


def _scene(rects, shape=(120, 160)):
    """Gray canvas with solid colored rectangles (color, x1, y1, x2, y2)."""
    img = np.full(shape + (3,), 128, dtype=np.uint8)
    for color, x1, y1, x2, y2 in rects:
        img[y1:y2, x1:x2] = _SWATCH[color]
    return img


class TestHueRange:
    def test_validation(self):
        with pytest.raises(ValueError):
            HueRange("bad", -1.0, 10.0)
        with pytest.raises(ValueError):
            HueRange("bad", 0.0, 360.0)
        with pytest.raises(ValueError):
            HueRange("bad", 0.0, 10.0, s_min=1.5)
        with pytest.raises(ValueError):
            HueRange("bad", 0.0, 10.0, v_min=-0.1)

    def test_plain_band_is_half_open(self):
        band = HueRange("green", 90.0, 150.0, s_min=0.0, v_min=0.0)
        h = np.array([89.9, 90.0, 120.0, 149.9, 150.0])
        ones = np.ones_like(h)
        got = band.contains(h, ones, ones)
        assert got.tolist() == [False, True, True, True, False]

    def test_wraparound_band(self):
        band = HueRange("red", 345.0, 15.0, s_min=0.0, v_min=0.0)
        h = np.array([344.9, 345.0, 359.9, 0.0, 14.9, 15.0, 180.0])
        ones = np.ones_like(h)
        got = band.contains(h, ones, ones)
        assert got.tolist() == [False, True, True, True, True, False, False]

    def test_saturation_and_value_gates(self):
        band = HueRange("green", 90.0, 150.0, s_min=0.5, v_min=0.5)
        h = np.full(4, 120.0)
        s = np.array([0.49, 0.5, 0.9, 0.9])
        v = np.array([0.9, 0.9, 0.49, 0.5])
        assert band.contains(h, s, v).tolist() == [False, True, False, True]

    def test_dict_round_trip(self):
        band = HueRange("teal", 170.0, 200.0, s_min=0.25, v_min=0.4)
        assert HueRange.from_dict(band.to_dict()) == band


class TestColorMask:
    def test_gray_background_matches_nothing(self):
        img = np.full((10, 10, 3), 128, dtype=np.uint8)
        for band in DEFAULT_HUE_RANGES:
            assert not color_mask(img, band).any()

    def test_each_swatch_matches_only_its_band(self):
        for name, rgb in _SWATCH.items():
            img = np.full((4, 4, 3), rgb, dtype=np.uint8)
            for band in DEFAULT_HUE_RANGES:
                expected = band.name == name
                assert color_mask(img, band).all() == expected, (name, band.name)


class TestSegmentation:
    def test_boxes_are_exact_for_solid_rectangles(self):
        img = _scene([("red", 10, 20, 40, 50), ("blue", 80, 60, 130, 100)])
        found = segment_color_objects(img)
        assert [obj.color for obj in found] == ["red", "blue"]
        assert found[0].bbox == BoxLabel(10.0, 20.0, 40.0, 50.0)
        assert found[1].bbox == BoxLabel(80.0, 60.0, 130.0, 100.0)
        assert found[0].area_px == 30 * 30
        assert found[1].area_px == 50 * 40

    def test_two_objects_of_the_same_color(self):
        img = _scene([("green", 5, 5, 25, 25), ("green", 60, 70, 90, 100)])
        found = segment_color_objects(img)
        assert [obj.color for obj in found] == ["green", "green"]
        assert found[0].bbox == BoxLabel(5.0, 5.0, 25.0, 25.0)
        assert found[1].bbox == BoxLabel(60.0, 70.0, 90.0, 100.0)

    def test_min_area_gate(self):
        # 9x9 = 81 px rejected, 10x10 = 100 px kept
        img = _scene([("red", 10, 10, 19, 19), ("blue", 60, 60, 70, 70)])
        found = segment_color_objects(img)
        assert [obj.color for obj in found] == ["blue"]
        assert found[0].area_px == MIN_OBJECT_AREA_PX

    def test_min_area_override(self):
        img = _scene([("red", 10, 10, 19, 19)])
        found = segment_color_objects(img, min_area=81)
        assert [obj.color for obj in found] == ["red"]

    def test_sorted_by_position_not_band_order(self):
        # blue sits above red in the image; band order lists red first
        img = _scene([("red", 10, 80, 40, 110), ("blue", 10, 5, 40, 35)])
        found = segment_color_objects(img)
        assert [obj.color for obj in found] == ["blue", "red"]

    def test_empty_scene(self):
        assert segment_color_objects(_scene([])) == []

    def test_to_dict(self):
        img = _scene([("yellow", 10, 20, 40, 50)])
        (obj,) = segment_color_objects(img)
        d = obj.to_dict()
        assert d == {
            "color": "yellow",
            "bbox": [10.0, 20.0, 40.0, 50.0],
            "area_px": 900,
        }
        assert isinstance(obj, DetectedObject)

    def test_custom_hue_ranges(self):
        img = _scene([("red", 10, 20, 40, 50)])
        found = segment_color_objects(img, hue_ranges=(HueRange("warm", 330.0, 30.0),))
        assert [obj.color for obj in found] == ["warm"]
