"""Feature extraction: from a hand mask to one observation vector.

The pointing angle is fit from the whole contour rather than just the
finger axis: every contour point votes for the line through the
fingertip that best explains it, with weights decaying exponentially
in the distance from the tip.  The best line is the dominant
eigenvector of the weighted second-moment matrix of the tip-centered
points -- the weighted least-squares line constrained to pass through
the fingertip.  Points on the finger dominate, but the hand's overall
lean still contributes, which stabilizes the angle when the finger is
only a few pixels wide.
"""

from __future__ import annotations

import numpy as np

from ..features import FeatureVector, fold_angle_deg
from .contour import polygon_centroid
from .fingertip import FingertipGeometry, detect_fingertip

#: Weight scale: a contour point d pixels from the tip votes with exp(-d/100).
WLS_SCALE_PX = 100.0


def pointing_angle(contour: np.ndarray, fingertip: np.ndarray) -> float:
    """Angle (degrees, folded to [0, 180)) of the pointing line.

    Fits the line through ``fingertip`` minimizing the weighted squared
    point-line distances over the contour; weights fall off as
    exp(-distance / WLS_SCALE_PX).  A perfectly horizontal degenerate
    contour yields exactly 0.
    """
    pts = np.asarray(contour, dtype=np.float64)
    centered = pts - np.asarray(fingertip, dtype=np.float64)
    dist = np.hypot(centered[:, 0], centered[:, 1])
    weights = np.exp(-dist / WLS_SCALE_PX)
    moment = (weights[:, None] * centered).T @ centered
    _, eigvecs = np.linalg.eigh(moment)
    direction = eigvecs[:, -1]  # eigh sorts ascending; last = dominant
    return fold_angle_deg(float(direction[0]), float(direction[1]))


def extract_features(mask: np.ndarray) -> FeatureVector | None:
    """Observation vector for one hand mask, or None if no fingertip.

    The vector is (pointing angle, hand-contour centroid, fingertip);
    frames without a single unambiguous fingertip propagate None.
    """
    geometry = detect_fingertip(mask)
    if geometry is None:
        return None
    return features_from_geometry(geometry)


def features_from_geometry(geometry: FingertipGeometry) -> FeatureVector:
    """Observation vector from an already-detected fingertip."""
    centroid = polygon_centroid(geometry.contour)
    alpha = pointing_angle(geometry.contour, geometry.fingertip)
    return FeatureVector(
        alpha=alpha,
        c_x=float(centroid[0]),
        c_y=float(centroid[1]),
        p_x=float(geometry.fingertip[0]),
        p_y=float(geometry.fingertip[1]),
    )
