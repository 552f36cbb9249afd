"""Geometric target selection by casting a ray through the pointing hand.

The ray starts at the hand centroid and passes through the fingertip.
Each candidate box gets a quality score ``phi``: the supporting line of
the ray splits the box into two parts, and ``phi`` is the smaller part's
area over the larger's.  A ray through the box center scores 1.0, a
grazing hit scores 0.0, and a miss (or a box behind the hand) scores
nothing.  The highest-quality box above a threshold wins; among equal
qualities the nearer box does.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boxes import BoxLabel
from .features import FeatureVector

PHI_MIN = 0.2


@dataclass(frozen=True)
class PointingRay:
    origin: np.ndarray
    direction: np.ndarray  # unit vector

    @classmethod
    def through(cls, origin, point) -> "PointingRay":
        origin = np.asarray(origin, dtype=float)
        point = np.asarray(point, dtype=float)
        d = point - origin
        norm = float(np.hypot(*d))
        if norm == 0.0:
            raise ValueError("ray needs two distinct points")
        return cls(origin=origin, direction=d / norm)


def pointing_ray(geometry) -> PointingRay:
    """Ray implied by a detected fingertip's geometry.

    The origin is the midpoint between the two flank centroids and the
    ray passes through the fingertip; a fingertip coinciding with that
    midpoint has no direction and raises ValueError.
    """
    return PointingRay.through(geometry.flank_midpoint, geometry.fingertip)


def ray_from_feature(fv: FeatureVector) -> PointingRay:
    """The pointing ray encoded in a feature vector: hand centroid -> fingertip."""
    return PointingRay.through((fv.c_x, fv.c_y), (fv.p_x, fv.p_y))


def _span(origin: np.ndarray, direction: np.ndarray, box: BoxLabel):
    """Parameter interval [t_in, t_out] where the ray is inside the box.

    Returns None when the ray misses the box or the box lies entirely
    behind the origin.  Grazing contact (a degenerate interval) counts
    as a hit.
    """
    t_lo, t_hi = -np.inf, np.inf
    for o, d, lo, hi in (
        (origin[0], direction[0], box.x1, box.x2),
        (origin[1], direction[1], box.y1, box.y2),
    ):
        if d == 0.0:
            if not lo <= o <= hi:
                return None
            continue
        t1, t2 = (lo - o) / d, (hi - o) / d
        if t1 > t2:
            t1, t2 = t2, t1
        t_lo, t_hi = max(t_lo, t1), min(t_hi, t2)
    if t_hi < t_lo or t_hi < 0.0:
        return None
    return max(t_lo, 0.0), t_hi


def ray_hits(origin, direction, box: BoxLabel) -> bool:
    """Whether the ray from `origin` along `direction` touches the box."""
    return _span(np.asarray(origin, float), np.asarray(direction, float), box) is not None


def _clip_halfplane(poly: list[np.ndarray], a: np.ndarray, d: np.ndarray) -> list[np.ndarray]:
    """Clip a polygon to the halfplane left of the line through `a` along `d`."""
    def side(p):
        return d[0] * (p[1] - a[1]) - d[1] * (p[0] - a[0])

    out: list[np.ndarray] = []
    for p, q in zip(poly, poly[1:] + poly[:1]):
        sp, sq = side(p), side(q)
        if sp >= 0.0:
            out.append(p)
        if (sp > 0.0) != (sq > 0.0) and sp != sq:
            out.append(p + (q - p) * (sp / (sp - sq)))
    return out


def _area(poly: list[np.ndarray]) -> float:
    if len(poly) < 3:
        return 0.0
    xs = np.array([p[0] for p in poly])
    ys = np.array([p[1] for p in poly])
    return abs(float(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1)))) / 2.0


def hit_quality(ray: PointingRay, box: BoxLabel) -> float | None:
    """Balance of the two box parts cut off by the ray's line, or None on a miss."""
    if _span(ray.origin, ray.direction, box) is None:
        return None
    corners = [np.array(c, dtype=float) for c in box.corners()]
    a1 = _area(_clip_halfplane(corners, ray.origin, ray.direction))
    a2 = box.area - a1
    lo, hi = sorted((a1, a2))
    return max(0.0, lo) / hi


def select_target(
    ray: PointingRay, boxes: list[BoxLabel], phi_min: float = PHI_MIN
) -> tuple[int | None, list[float | None]]:
    """Best box index by hit quality, plus the per-box qualities.

    Boxes scoring below `phi_min` are ignored; among equal qualities the
    box the ray enters first wins.  Returns (None, qualities) when
    nothing qualifies.
    """
    qualities: list[float | None] = [hit_quality(ray, b) for b in boxes]
    best: tuple[float, float, int] | None = None  # (-phi, t_in, i)
    for i, phi in enumerate(qualities):
        if phi is None or phi < phi_min:
            continue
        t_in = _span(ray.origin, ray.direction, boxes[i])[0]
        key = (-phi, t_in, i)
        if best is None or key < best:
            best = key
    return (best[2] if best is not None else None), qualities
