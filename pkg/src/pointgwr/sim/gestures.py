"""Synthetic pointing gestures and off-scenario hand poses.

A valid gesture puts the hand anchor in a small zone at the subject
edge, aims it at the target's bounding-box centroid with Gaussian
angular noise, and places the fingertip a sampled fraction of the way
toward the aim point -- farther targets draw the arm out farther, which
is what encodes target depth in the features -- with the hand centroid
trailing the tip.  The whole hand then gets one shared positional
jitter, which shifts both points without bending the ray.

Off-scenario samples model the hand at rest or in transit: retracted
toward the subject's body (above the gesture zone) and oriented level
or upward, away from the table.  Their rays never cross an object box
-- the sampler rejects and redraws any that would -- and their fingertip
sits far outside the band where pointing fingertips live, which is what
lets a trained network reject them by activation alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..baseline import ray_hits
from ..boxes import BoxLabel
from ..features import FeatureVector, fold_angle_deg
from .geometry import TableGeometry
from .scenes import Scene

#: rest-pose anchor zone (hand pulled back toward the body)
REST_X_PX = (300.0, 1100.0)
REST_Y_PX = (60.0, 250.0)
#: rest-pose elevation above the horizon, degrees
REST_ELEVATION_DEG = (5.0, 175.0)
REST_REACH_PX = (240.0, 600.0)

_MAX_REDRAWS = 1000


@dataclass(frozen=True)
class NoiseSpec:
    """Noise configuration for gesture synthesis."""

    sigma_angle_deg: float = 2.0
    sigma_pos_px: float = 5.0
    outlier_rate: float = 0.0

    def __post_init__(self):
        if self.sigma_angle_deg < 0 or self.sigma_pos_px < 0:
            raise ValueError("noise magnitudes must be >= 0")
        if not 0.0 <= self.outlier_rate <= 1.0:
            raise ValueError("outlier_rate must be in [0, 1]")


def _uniform(rng: np.random.Generator, lo_hi: tuple[float, float]) -> float:
    return float(rng.uniform(lo_hi[0], lo_hi[1]))


def _assemble(anchor, direction, reach, hand_len, jitter) -> FeatureVector:
    tip = anchor + reach * direction
    hand = tip - hand_len * direction
    tip = tip + jitter
    hand = hand + jitter
    alpha = fold_angle_deg(float(direction[0]), float(direction[1]))
    return FeatureVector(
        alpha=alpha,
        c_x=float(hand[0]),
        c_y=float(hand[1]),
        p_x=float(tip[0]),
        p_y=float(tip[1]),
    )


def _pointing_gesture(
    scene: Scene, noise: NoiseSpec, rng: np.random.Generator, geometry: TableGeometry
) -> FeatureVector:
    # Subjects aim at the middle of what they see of the target -- for a
    # partly hidden cube that is the centroid of its visible extent.
    aim = np.asarray(scene.target.bbox.centroid)
    home_mid = (geometry.anchor_x_px[0] + geometry.anchor_x_px[1]) / 2
    anchor = np.array(
        [
            _uniform(rng, geometry.anchor_x_px)
            + geometry.anchor_x_track * (aim[0] - home_mid),
            _uniform(rng, geometry.anchor_y_px),
        ]
    )
    d = aim - anchor
    dist = float(np.hypot(*d))
    u = d / dist
    theta = math.radians(rng.normal(0.0, noise.sigma_angle_deg)) if noise.sigma_angle_deg else 0.0
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    direction = np.array([u[0] * cos_t - u[1] * sin_t, u[0] * sin_t + u[1] * cos_t])
    jitter = rng.normal(0.0, noise.sigma_pos_px, size=2) if noise.sigma_pos_px else np.zeros(2)
    return _assemble(
        anchor,
        direction,
        dist * _uniform(rng, geometry.reach_frac),
        _uniform(rng, geometry.hand_len_px),
        jitter,
    )


def _rest_pose(
    scene: Scene, noise: NoiseSpec, rng: np.random.Generator, geometry: TableGeometry
) -> FeatureVector:
    """A hand pose oriented away from the table whose ray misses every object."""
    boxes = [o.bbox for o in scene.objects]
    for _ in range(_MAX_REDRAWS):
        anchor = np.array([_uniform(rng, REST_X_PX), _uniform(rng, REST_Y_PX)])
        elev = math.radians(_uniform(rng, REST_ELEVATION_DEG))
        direction = np.array([math.cos(elev), -math.sin(elev)])
        jitter = (
            rng.normal(0.0, noise.sigma_pos_px, size=2) if noise.sigma_pos_px else np.zeros(2)
        )
        fv = _assemble(
            anchor,
            direction,
            _uniform(rng, REST_REACH_PX),
            _uniform(rng, geometry.hand_len_px),
            jitter,
        )
        tip_inside = 0 <= fv.p_x <= geometry.image_w and 0 <= fv.p_y <= geometry.image_h
        if tip_inside and not any(ray_hits((fv.c_x, fv.c_y), direction, b) for b in boxes):
            return fv
    raise RuntimeError("could not place an off-scenario pose clear of the objects")


def synth_gesture(
    scene: Scene,
    noise: NoiseSpec,
    rng: np.random.Generator,
    geometry: TableGeometry | None = None,
) -> tuple[FeatureVector, BoxLabel | None]:
    """One gesture frame for a scene: (features, target box).

    The box is None for off-scenario samples, drawn with probability
    ``noise.outlier_rate``.
    """
    geometry = geometry or TableGeometry()
    if noise.outlier_rate and rng.random() < noise.outlier_rate:
        return _rest_pose(scene, noise, rng, geometry), None
    return _pointing_gesture(scene, noise, rng, geometry), scene.target.bbox
