"""Colored-object segmentation on the table surface.

Objects are found per hue band: an HSV threshold selects the band,
8-connected components are extracted, and every component of at least
``MIN_OBJECT_AREA_PX`` pixels becomes a detected object with an
axis-aligned bounding box.  Hue ranges may wrap through 0 degrees so a
single band can cover red.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..boxes import BoxLabel
from .color import rgb_to_hsv

#: Components smaller than this many pixels are discarded as speckle.
MIN_OBJECT_AREA_PX = 100

_EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class HueRange:
    """One named hue band with minimum saturation and value gates.

    ``h_min``/``h_max`` are degrees in [0, 360); when ``h_min > h_max``
    the band wraps through 0 (e.g. red as 345..15).  Saturation and
    value are in [0, 1].
    """

    name: str
    h_min: float
    h_max: float
    s_min: float = 0.3
    v_min: float = 0.2

    def __post_init__(self) -> None:
        for attr in ("h_min", "h_max"):
            value = getattr(self, attr)
            if not 0.0 <= value < 360.0:
                raise ValueError(f"{attr} must lie in [0, 360), got {value}")
        for attr in ("s_min", "v_min"):
            value = getattr(self, attr)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{attr} must lie in [0, 1], got {value}")

    def contains(self, h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.h_min <= self.h_max:
            in_hue = (h >= self.h_min) & (h < self.h_max)
        else:
            in_hue = (h >= self.h_min) | (h < self.h_max)
        return in_hue & (s >= self.s_min) & (v >= self.v_min)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "h_min": self.h_min,
            "h_max": self.h_max,
            "s_min": self.s_min,
            "v_min": self.v_min,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HueRange":
        return cls(
            name=str(data["name"]),
            h_min=float(data["h_min"]),
            h_max=float(data["h_max"]),
            s_min=float(data.get("s_min", 0.3)),
            v_min=float(data.get("v_min", 0.2)),
        )


DEFAULT_HUE_RANGES: tuple[HueRange, ...] = (
    HueRange("red", 345.0, 15.0),
    HueRange("yellow", 40.0, 70.0),
    HueRange("green", 90.0, 150.0),
    HueRange("blue", 200.0, 250.0),
)


@dataclass(frozen=True)
class DetectedObject:
    """One segmented object: its hue-band name and pixel bounding box."""

    color: str
    bbox: BoxLabel
    area_px: int

    def to_dict(self) -> dict:
        return {
            "color": self.color,
            "bbox": list(self.bbox.as_tuple()),
            "area_px": self.area_px,
        }


def color_mask(image: np.ndarray, hue_range: HueRange) -> np.ndarray:
    """Boolean mask of the pixels falling inside one hue band."""
    hsv = rgb_to_hsv(image)
    return hue_range.contains(hsv[..., 0], hsv[..., 1], hsv[..., 2])


def segment_color_objects(
    image: np.ndarray,
    hue_ranges: tuple[HueRange, ...] = DEFAULT_HUE_RANGES,
    min_area: int = MIN_OBJECT_AREA_PX,
) -> list[DetectedObject]:
    """Segment an RGB image into per-hue-band objects.

    Returns the detections sorted by (y1, x1, color) so the listing is
    stable regardless of hue-band order.
    """
    hsv = rgb_to_hsv(image)
    h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]
    found: list[DetectedObject] = []
    for hue_range in hue_ranges:
        labelled, count = ndimage.label(hue_range.contains(h, s, v), structure=_EIGHT_CONNECTED)
        for index, slices in enumerate(ndimage.find_objects(labelled, count), start=1):
            area = int((labelled[slices] == index).sum())
            if area < min_area:
                continue
            rows, cols = slices
            # slice stops are exclusive, matching the half-open box convention
            bbox = BoxLabel(float(cols.start), float(rows.start), float(cols.stop), float(rows.stop))
            found.append(DetectedObject(hue_range.name, bbox, area))
    found.sort(key=lambda obj: (obj.bbox.y1, obj.bbox.x1, obj.color))
    return found
