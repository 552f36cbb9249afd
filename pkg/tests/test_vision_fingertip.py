"""Fingertip detection on synthetic hand masks.

Shapes are drawn analytically (half-plane/disk predicates on a pixel
grid) so the expected tip position and opening angle are known from the
construction, not from running the detector.
"""

import numpy as np

from pointgwr.vision import (
    ANGLE_STEP,
    FingertipGeometry,
    detect_fingertip,
    trace_contour,
    vertex_angle,
    convex_hull_indices,
)


def _grid(h, w):
    yy, xx = np.mgrid[0:h, 0:w]
    return xx, yy


def _wedge_mask(tip=(180, 100), half_slope=0.3):
    """Rectangle body with one triangular wedge tapering to ``tip``."""
    xx, yy = _grid(200, 220)
    tip_x, tip_y = tip
    body = (xx >= 40) & (xx <= 120) & (yy >= 60) & (yy <= 140)
    wedge = (
        (xx >= 118)
        & (xx <= tip_x)
        & (np.abs(yy - tip_y) <= half_slope * (tip_x - xx))
    )
    return body | wedge


def _two_spikes_mask(tip_y_a, tip_y_b, tip_x=140):
    """Rectangle body with two wedges whose tips end at the given rows."""
    xx, yy = _grid(200, 200)
    body = (xx >= 20) & (xx <= 60) & (yy >= 40) & (yy <= 160)
    out = body.copy()
    for base_y, tip_y in ((70, tip_y_a), (130, tip_y_b)):
        center = base_y + (tip_y - base_y) * (xx - 58) / (tip_x - 58)
        wedge = (
            (xx >= 58)
            & (xx <= tip_x)
            & (np.abs(yy - center) <= 0.3 * (tip_x - xx))
        )
        out |= wedge
    return out


class TestAccepts:
    def test_wedge_tip_location(self):
        geom = detect_fingertip(_wedge_mask())
        assert geom is not None
        # the tip pixel is the unique rightmost point of the wedge
        assert abs(geom.fingertip[0] - 180.0) <= 2.0
        assert abs(geom.fingertip[1] - 100.0) <= 2.0

    def test_wedge_opening_angle_is_acute(self):
        geom = detect_fingertip(_wedge_mask())
        # construction opening is 2*arctan(0.3) = 33.4 degrees; pixel
        # quantization at a 12-step flank distance smears it somewhat
        assert 10.0 < geom.delta < 60.0

    def test_flanks_sit_behind_the_tip(self):
        geom = detect_fingertip(_wedge_mask())
        assert geom.flank_a[0] < geom.fingertip[0]
        assert geom.flank_b[0] < geom.fingertip[0]
        # one flank on each side of the finger axis
        sides = np.sign([geom.flank_a[1] - 100.0, geom.flank_b[1] - 100.0])
        assert sides[0] != sides[1]

    def test_flank_midpoint_is_the_mean(self):
        geom = detect_fingertip(_wedge_mask())
        np.testing.assert_allclose(
            geom.flank_midpoint, 0.5 * (geom.flank_a + geom.flank_b)
        )

    def test_translation_equivariance(self):
        mask = _wedge_mask()
        shifted = np.roll(np.roll(mask, 7, axis=0), 11, axis=1)
        a = detect_fingertip(mask)
        b = detect_fingertip(shifted)
        assert a is not None and b is not None
        offset = np.array([11.0, 7.0])
        np.testing.assert_allclose(b.fingertip, a.fingertip + offset)
        np.testing.assert_allclose(b.flank_a, a.flank_a + offset)
        np.testing.assert_allclose(b.flank_b, a.flank_b + offset)
        assert b.delta == a.delta

    def test_geometry_carries_contour_and_hull(self):
        geom = detect_fingertip(_wedge_mask())
        assert isinstance(geom, FingertipGeometry)
        assert geom.contour.ndim == 2 and geom.contour.shape[1] == 2
        assert geom.hull.size >= 3
        assert np.all(geom.hull < len(geom.contour))


class TestRejects:
    def test_empty_mask(self):
        assert detect_fingertip(np.zeros((40, 40), dtype=bool)) is None

    def test_contour_too_short(self):
        mask = np.zeros((40, 40), dtype=bool)
        mask[10:13, 10:13] = True  # 8-point contour < 2 * ANGLE_STEP + 1
        assert detect_fingertip(mask) is None

    def test_disk_has_no_acute_vertex(self):
        xx, yy = _grid(160, 160)
        disk = (xx - 80) ** 2 + (yy - 80) ** 2 <= 50**2
        assert detect_fingertip(disk) is None

    def test_square_corners_are_exactly_right_angles(self):
        mask = np.zeros((100, 100), dtype=bool)
        mask[20:80, 20:80] = True
        # sanity: the corner opening measured ANGLE_STEP along each edge
        contour = trace_contour(mask)
        hull = convex_hull_indices(contour)
        corner_angles = [vertex_angle(contour, int(i), ANGLE_STEP) for i in hull]
        assert all(a >= 90.0 for a in corner_angles)
        assert detect_fingertip(mask) is None

    def test_two_separate_fingers(self):
        # tips of the two spikes end 80 px apart: two candidate clusters
        assert detect_fingertip(_two_spikes_mask(60, 140)) is None

    def test_converging_fingers_split_by_deep_valley(self):
        # tips 10 px apart merge into one spatial cluster, but the deep
        # concavity between the spikes marks them as distinct fingers
        mask = _two_spikes_mask(95, 105)
        assert detect_fingertip(mask) is None

    def test_large_triangle_has_multiple_acute_corners(self):
        xx, yy = _grid(200, 200)
        # right isoceles triangle, legs 140 px: every corner is acute
        # or right but the two 45-degree corners are 140 px apart
        tri = (xx >= 20) & (yy >= 20) & (xx + yy <= 180)
        assert detect_fingertip(tri) is None


class TestAnalyticContour:
    def test_equilateral_apex_angles(self):
        # points sampled exactly on the sides of an equilateral triangle;
        # the opening at each corner must come out at 60 degrees
        a = np.array([0.0, 0.0])
        b = np.array([100.0, 0.0])
        c = np.array([50.0, 100.0 * np.sin(np.pi / 3)])
        pts = []
        for p, q in ((a, b), (b, c), (c, a)):
            ts = np.linspace(0.0, 1.0, 40, endpoint=False)
            pts.extend(p + t * (q - p) for t in ts)
        contour = np.asarray(pts)
        for corner in (0, 40, 80):
            ang = vertex_angle(contour, corner, ANGLE_STEP)
            assert abs(ang - 60.0) < 0.5
