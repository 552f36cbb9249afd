"""Fingertip detection on a segmented hand mask.

A pointing hand shows exactly one sharp protrusion: the extended
finger.  The detector walks the hand contour, keeps the convex-hull
vertices whose local opening angle is acute, merges candidates that
are close along the boundary into clusters, and accepts the frame only
when a single cluster remains.  Deep convexity defects act as
separators: two clusters of acute vertices that sit on opposite sides
of a deep valley are two fingers even if their tips come close in
space, so such frames are rejected as well.  Rejection means the frame
contributes no observation -- a closed fist, a flat hand, or a
two-finger spread all yield None rather than a bogus fingertip.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import (
    convex_hull_indices,
    convexity_defects,
    single_linkage,
    trace_contour,
    vertex_angle,
)

#: Contour steps between a vertex and its flank points when measuring
#: the opening angle.
ANGLE_STEP = 12

#: Hull vertices with an opening angle below this are tip candidates.
MAX_TIP_ANGLE_DEG = 90.0

#: Convexity defects at least this deep separate fingers.
MIN_DEFECT_DEPTH_PX = 10.0

#: Tip candidates closer than this merge into one cluster.
LINKAGE_CUTOFF_PX = 25.0


@dataclass(frozen=True)
class FingertipGeometry:
    """Fingertip and flank points extracted from one hand contour.

    ``fingertip`` is the accepted cluster's apex centroid; ``flank_a``
    and ``flank_b`` are the centroids of the flank points sitting
    ``ANGLE_STEP`` contour positions before and after the apexes.
    ``delta`` is the mean opening angle at the apexes, in degrees.
    """

    contour: np.ndarray
    hull: np.ndarray
    fingertip: np.ndarray
    flank_a: np.ndarray
    flank_b: np.ndarray
    delta: float

    @property
    def flank_midpoint(self) -> np.ndarray:
        """Point between the flanks; with the tip it fixes the finger axis."""
        return 0.5 * (self.flank_a + self.flank_b)


def detect_fingertip(mask: np.ndarray) -> FingertipGeometry | None:
    """Find the single extended fingertip in a hand mask, if any.

    Returns None whenever the mask is empty, the contour is too short
    to measure opening angles, no hull vertex is acute, or the acute
    vertices form more than one finger (spatially separate clusters,
    or one cluster split by a deep convexity defect).
    """
    contour = trace_contour(mask)
    if contour is None or len(contour) < 2 * ANGLE_STEP + 1:
        return None
    hull = convex_hull_indices(contour)
    candidates = [
        int(i) for i in np.sort(hull)
        if vertex_angle(contour, int(i), ANGLE_STEP) < MAX_TIP_ANGLE_DEG
    ]
    if not candidates:
        return None
    clusters = single_linkage(contour[candidates], LINKAGE_CUTOFF_PX)
    if len(clusters) != 1:
        return None
    members = np.asarray([candidates[j] for j in clusters[0]], dtype=np.intp)

    n = len(contour)
    separators = np.sort([d.far for d in convexity_defects(contour, hull)
                          if d.depth >= MIN_DEFECT_DEPTH_PX])
    if separators.size and members.size >= 2:
        # the cluster occupies the contour arcs between its members,
        # except the widest gap -- that one faces the rest of the hand.
        # a deep valley inside the occupied span means the cluster
        # straddles two fingers, however close their tips are.
        ordered = np.sort(members)
        gaps = np.diff(np.concatenate([ordered, ordered[:1] + n]))
        start = (int(np.argmax(gaps)) + 1) % ordered.size
        span = np.concatenate([ordered[start:], ordered[:start] + n])
        fars = np.concatenate([separators, separators + n])
        if np.any((fars > span[0]) & (fars < span[-1])):
            return None
    angles = [vertex_angle(contour, int(i), ANGLE_STEP) for i in members]
    return FingertipGeometry(
        contour=contour,
        hull=hull,
        fingertip=contour[members].mean(axis=0),
        flank_a=contour[(members - ANGLE_STEP) % n].mean(axis=0),
        flank_b=contour[(members + ANGLE_STEP) % n].mean(axis=0),
        delta=float(np.mean(angles)),
    )
