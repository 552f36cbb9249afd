"""Contour tracing, hulls, defects, angles, clustering."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pointgwr.vision import (
    convex_hull_indices,
    convexity_defects,
    polygon_area,
    polygon_centroid,
    single_linkage,
    trace_contour,
    vertex_angle,
)


def _brute_force_hull_points(points):
    """O(n^3) hull oracle: a directed pair (i, j) is a hull edge when every
    other point lies strictly on its left; hull vertices are the edge ends."""
    pts = np.asarray(points, float)
    n = len(pts)
    vertices = set()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            edge = pts[j] - pts[i]
            rel = pts - pts[i]
            cross = edge[0] * rel[:, 1] - edge[1] * rel[:, 0]
            others = [k for k in range(n) if k not in (i, j)]
            if all(cross[k] > 0 for k in others):
                vertices.add(tuple(pts[i]))
                vertices.add(tuple(pts[j]))
    return vertices


class TestTraceContour:
    def test_square_boundary(self):
        mask = np.zeros((20, 20), bool)
        mask[5:15, 5:15] = True
        contour = trace_contour(mask)
        assert len(contour) == 36  # 4 * (10 - 1) boundary pixels
        assert contour.min() == 5.0 and contour.max() == 14.0
        # every contour pixel touches the background
        as_set = {tuple(p) for p in contour.tolist()}
        assert len(as_set) == 36

    def test_empty_mask(self):
        assert trace_contour(np.zeros((5, 5), bool)) is None

    def test_single_pixel(self):
        mask = np.zeros((5, 5), bool)
        mask[2, 3] = True
        contour = trace_contour(mask)
        assert contour.tolist() == [[3.0, 2.0]]

    def test_largest_component_wins(self):
        mask = np.zeros((30, 30), bool)
        mask[2:5, 2:5] = True       # 9 px
        mask[10:25, 10:25] = True   # 225 px
        contour = trace_contour(mask)
        assert contour[:, 0].min() >= 10

    def test_mask_touching_the_border(self):
        mask = np.zeros((10, 10), bool)
        mask[0:4, 0:4] = True
        contour = trace_contour(mask)
        assert contour.min() == 0.0
        assert len(contour) == 12

    def test_one_pixel_spur_is_walked_both_ways(self):
        mask = np.zeros((10, 10), bool)
        mask[5, 2:8] = True  # horizontal line
        contour = trace_contour(mask)
        # the walk goes out and back: 2 * 6 - 2 boundary steps
        assert len(contour) == 10


class TestPolygonMath:
    def test_square_area_and_centroid(self):
        square = np.array([[0, 0], [10, 0], [10, 10], [0, 10]], float)
        assert abs(polygon_area(square)) == pytest.approx(100.0)
        assert polygon_centroid(square).tolist() == [5.0, 5.0]

    def test_degenerate_polygon_falls_back_to_vertex_mean(self):
        line = np.array([[0, 0], [4, 0], [8, 0]], float)
        assert polygon_centroid(line).tolist() == [4.0, 0.0]

    def test_centroid_weighs_area_not_vertices(self):
        # L-shape: vertex mean differs from the area centroid
        shape = np.array([[0, 0], [4, 0], [4, 1], [1, 1], [1, 4], [0, 4]], float)
        centroid = polygon_centroid(shape)
        area = abs(polygon_area(shape))
        assert area == pytest.approx(7.0)
        assert centroid[0] == pytest.approx(centroid[1])
        assert centroid[0] < np.mean(shape[:, 0])  # pulled toward the corner


class TestConvexHull:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**31 - 1), st.integers(4, 60))
    def test_matches_brute_force_oracle(self, seed, n):
        rng = np.random.default_rng(seed)
        pts = rng.uniform(0, 100, (n, 2))
        hull = convex_hull_indices(pts)
        got = {tuple(pts[i]) for i in hull}
        assert got == _brute_force_hull_points(pts)

    def test_collinear_points_reduce_to_extremes(self):
        pts = np.array([[0, 0], [1, 1], [2, 2], [3, 3]], float)
        hull = convex_hull_indices(pts)
        assert {tuple(pts[i]) for i in hull} == {(0.0, 0.0), (3.0, 3.0)}

    def test_duplicates_are_dropped(self):
        pts = np.array([[0, 0], [0, 0], [5, 0], [5, 5], [0, 0]], float)
        hull = convex_hull_indices(pts)
        assert len({tuple(pts[i]) for i in hull}) == 3

    def test_single_point(self):
        assert convex_hull_indices(np.array([[2.0, 3.0]])).tolist() == [0]

    def test_hull_indices_address_the_input(self):
        pts = np.array([[5, 5], [0, 0], [10, 0], [10, 10], [0, 10]], float)
        hull = convex_hull_indices(pts)
        assert 0 not in hull  # the interior point
        assert sorted(hull.tolist()) == [1, 2, 3, 4]


class TestConvexityDefects:
    def test_notch_depth(self):
        # square boundary with a notch carved into the top edge
        mask = np.ones((40, 40), bool)
        mask[0:15, 18:22] = False
        contour = trace_contour(mask)
        hull = convex_hull_indices(contour)
        defects = convexity_defects(contour, hull)
        deepest = max(defects, key=lambda d: d.depth)
        far = contour[deepest.far]
        assert deepest.depth == pytest.approx(15.0, abs=1.0)
        assert 17 <= far[0] <= 22 and far[1] == pytest.approx(15.0, abs=1.0)

    def test_convex_shape_has_shallow_defects_only(self):
        mask = np.zeros((60, 60), bool)
        yy, xx = np.mgrid[0:60, 0:60]
        mask[(xx - 30) ** 2 + (yy - 30) ** 2 <= 25 ** 2] = True
        contour = trace_contour(mask)
        defects = convexity_defects(contour, convex_hull_indices(contour))
        assert all(d.depth < 1.5 for d in defects)

    def test_defect_indices_lie_between_their_hull_ends(self):
        mask = np.ones((30, 30), bool)
        mask[0:10, 12:18] = False
        contour = trace_contour(mask)
        hull = np.sort(convex_hull_indices(contour))
        n = len(contour)
        for d in convexity_defects(contour, hull):
            span = (d.end - d.start) % n
            assert 0 < (d.far - d.start) % n < max(span, 1)


class TestVertexAngle:
    def test_right_angle_corner(self):
        # L path: flank points sit on perpendicular legs
        pts = np.array([[0, 10], [0, 5], [0, 0], [5, 0], [10, 0]], float)
        assert vertex_angle(pts, 2, 2) == pytest.approx(90.0)

    def test_straight_run_is_flat(self):
        pts = np.array([[i, 0] for i in range(10)], float)
        assert vertex_angle(pts, 5, 2) == pytest.approx(180.0)

    def test_degenerate_flank_counts_as_flat(self):
        pts = np.array([[0, 0], [0, 0], [5, 5]], float)
        assert vertex_angle(pts, 0, 1) == 180.0

    def test_wraps_around_the_contour_seam(self):
        pts = np.array([[0, 0], [10, 0], [10, 10], [0, 10]], float)
        assert vertex_angle(pts, 0, 1) == pytest.approx(90.0)


class TestSingleLinkage:
    def test_chains_merge_transitively(self):
        pts = np.array([[0, 0], [4, 0], [8, 0], [50, 0]], float)
        clusters = single_linkage(pts, cutoff=5.0)
        assert clusters == [[0, 1, 2], [3]]

    def test_cutoff_is_strict(self):
        pts = np.array([[0, 0], [5, 0]], float)
        assert single_linkage(pts, cutoff=5.0) == [[0], [1]]
        assert single_linkage(pts, cutoff=5.0 + 1e-9) == [[0, 1]]

    def test_empty_and_singleton(self):
        assert single_linkage(np.empty((0, 2)), 10.0) == []
        assert single_linkage(np.array([[1.0, 2.0]]), 10.0) == [[0]]

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=25, deadline=None)
    def test_clusters_partition_the_indices(self, seed):
        rng = np.random.default_rng(seed)
        pts = rng.uniform(0, 50, (rng.integers(1, 25), 2))
        clusters = single_linkage(pts, cutoff=8.0)
        flat = sorted(i for c in clusters for i in c)
        assert flat == list(range(len(pts)))
        # separation: points in different clusters are >= cutoff apart
        for a_i, cluster_a in enumerate(clusters):
            for cluster_b in clusters[a_i + 1:]:
                for i in cluster_a:
                    for j in cluster_b:
                        assert np.hypot(*(pts[i] - pts[j])) >= 8.0
