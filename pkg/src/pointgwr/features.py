"""The five-dimensional gesture feature space and its scaling.

A gesture observation is the vector (alpha, c_x, c_y, p_x, p_y):

* ``alpha``  -- pointing-line angle against the horizontal, folded into
  [0, 180) degrees.  0 is horizontal, 90 vertical; the fold means a line
  and its reverse share one angle.
* ``c_x, c_y`` -- hand-region centroid in pixels.
* ``p_x, p_y`` -- fingertip position in pixels.

Raw pixel coordinates span hundreds of units while the angle spans 180,
so distance computations scale each dimension to [0, 1] first.  The
scaling bounds are fixed per scenario (configured, never fitted to the
data at hand); values outside the bounds map outside [0, 1], which is
deliberate -- off-scenario gestures should look far away.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FeatureVector:
    """One gesture observation.  Angles in degrees, positions in pixels."""

    alpha: float
    c_x: float
    c_y: float
    p_x: float
    p_y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.c_x, self.c_y, self.p_x, self.p_y], dtype=np.float64)

    @staticmethod
    def from_array(v: np.ndarray) -> "FeatureVector":
        if np.shape(v) != (5,):
            raise ValueError(f"feature vector must have 5 entries, got shape {np.shape(v)}")
        return FeatureVector(*(float(x) for x in v))


@dataclass(frozen=True)
class FeatureBounds:
    """Fixed min-max bounds used to scale feature vectors to unit range.

    ``x`` bounds apply to the two x-coordinates (hand centroid and
    fingertip), ``y`` bounds to the two y-coordinates, ``alpha`` to the
    angle.  ``image_bounds`` builds the whole-image variant in which the
    pixel dimensions are scaled by the full frame size.
    """

    alpha: tuple[float, float] = (0.0, 180.0)
    x: tuple[float, float] = (0.0, 1400.0)
    y: tuple[float, float] = (0.0, 1500.0)

    def __post_init__(self) -> None:
        for lo, hi in (self.alpha, self.x, self.y):
            if not hi > lo:
                raise ValueError(f"empty bound range ({lo}, {hi})")

    @staticmethod
    def image_bounds(width: float, height: float) -> "FeatureBounds":
        return FeatureBounds(alpha=(0.0, 180.0), x=(0.0, float(width)), y=(0.0, float(height)))

    def _lo_span(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.array([self.alpha[0], self.x[0], self.y[0], self.x[0], self.y[0]])
        hi = np.array([self.alpha[1], self.x[1], self.y[1], self.x[1], self.y[1]])
        return lo, hi - lo

    def normalize(self, v: np.ndarray) -> np.ndarray:
        """Scale vectors (shape (..., 5)) into bound-relative coordinates."""
        lo, span = self._lo_span()
        return (np.asarray(v, dtype=np.float64) - lo) / span

    def denormalize(self, v: np.ndarray) -> np.ndarray:
        lo, span = self._lo_span()
        return np.asarray(v, dtype=np.float64) * span + lo

    def as_dict(self) -> dict:
        return {"alpha": list(self.alpha), "x": list(self.x), "y": list(self.y)}

    @staticmethod
    def from_dict(d: dict) -> "FeatureBounds":
        return FeatureBounds(
            alpha=tuple(d["alpha"]), x=tuple(d["x"]), y=tuple(d["y"])
        )


def fold_angle_deg(dx: float, dy_img: float) -> float:
    """Angle of the line with direction (dx, dy_img) against the horizontal.

    ``dy_img`` is an image-coordinate delta (y grows downward); the angle
    is reported in standard orientation, folded into [0, 180) so that a
    direction and its opposite coincide.
    """
    ang = float(np.degrees(np.arctan2(-dy_img, dx))) % 180.0
    # the modulo of a tiny negative angle can round up to exactly 180,
    # which is the same folded line as 0
    return 0.0 if ang == 180.0 else ang
