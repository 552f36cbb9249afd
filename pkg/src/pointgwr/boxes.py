"""Axis-aligned bounding boxes and the box arithmetic shared across the package.

Boxes live in continuous image coordinates with the origin at the top-left
corner, x growing right and y growing down.  A box is the half-open region
[x1, x2) x [y1, y2), which keeps pixel-grid boxes consistent with pixel
counts (a one-pixel box has width 1.0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class BoxLabel:
    """A bounding box used both as ground truth and as a network label.

    Attributes:
        x1, y1: top-left corner.
        x2, y2: bottom-right corner.  Strictly larger than the top-left
            corner in both coordinates.
    """

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise ValueError(
                f"degenerate box: ({self.x1}, {self.y1}, {self.x2}, {self.y2})"
            )

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def centroid(self) -> tuple[float, float]:
        return (0.5 * (self.x1 + self.x2), 0.5 * (self.y1 + self.y2))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x1, self.y1, self.x2, self.y2)

    def corners(self) -> list[tuple[float, float]]:
        """Corner points in counter-clockwise order (image coordinates)."""
        return [
            (self.x1, self.y1),
            (self.x1, self.y2),
            (self.x2, self.y2),
            (self.x2, self.y1),
        ]

    def contains_point(self, x: float, y: float) -> bool:
        return self.x1 <= x < self.x2 and self.y1 <= y < self.y2

    @staticmethod
    def from_centroid(cx: float, cy: float, width: float, height: float) -> "BoxLabel":
        if width <= 0 or height <= 0:
            raise ValueError(f"box dimensions must be positive: {width} x {height}")
        return BoxLabel(cx - width / 2, cy - height / 2, cx + width / 2, cy + height / 2)


def intersection_area(a: BoxLabel, b: BoxLabel) -> float:
    """Area of the overlap of two boxes, 0.0 when they are disjoint."""
    w = min(a.x2, b.x2) - max(a.x1, b.x1)
    h = min(a.y2, b.y2) - max(a.y1, b.y1)
    if w <= 0 or h <= 0:
        return 0.0
    return w * h


def iou(a: BoxLabel, b: BoxLabel) -> float:
    """Intersection over union of two boxes.

    Returns a value in [0, 1]; defensively returns 0.0 if the union area
    degenerates (cannot happen for valid boxes, but keeps the function
    total on arbitrary input).
    """
    inter = intersection_area(a, b)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    return inter / union


def union_bounds(boxes: Sequence[BoxLabel] | Iterable[BoxLabel]) -> BoxLabel:
    """The tightest box containing every input box (corner extremes)."""
    boxes = list(boxes)
    if not boxes:
        raise ValueError("union_bounds needs at least one box")
    return BoxLabel(
        min(b.x1 for b in boxes),
        min(b.y1 for b in boxes),
        max(b.x2 for b in boxes),
        max(b.y2 for b in boxes),
    )


def centroid_distance(a: BoxLabel, b: BoxLabel) -> float:
    """Euclidean distance between two box centroids."""
    (ax, ay), (bx, by) = a.centroid, b.centroid
    return math.hypot(ax - bx, ay - by)
