"""Contour geometry: tracing, hulls, defects, and corner angles.

All routines operate on contours represented as (N, 2) float arrays of
(x, y) pixel centers, ordered along the boundary.  Hull and defect
results are expressed as indices into the contour so downstream code
can walk the original boundary around any vertex of interest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

_EIGHT_CONNECTED = np.ones((3, 3), dtype=int)

#: Moore neighborhood in clockwise order (image coordinates, y down),
#: starting due west.  Order matters: the tracer scans clockwise from
#: the backtrack neighbor.
_MOORE = ((-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1))


def trace_contour(mask: np.ndarray) -> np.ndarray | None:
    """Trace the outer boundary of the largest component in a mask.

    Moore-neighbor tracing with Jacob's stopping criterion: the walk
    ends when it re-enters the start pixel along the same edge it first
    left through, which closes the boundary exactly once even on
    one-pixel-wide spurs.  Returns (N, 2) float (x, y) points or None
    for an empty mask.
    """
    mask = np.asarray(mask)
    mask = mask.astype(bool) if mask.dtype != bool else mask
    if mask.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {mask.shape}")
    if not mask.any():
        return None
    labelled, count = ndimage.label(mask, structure=_EIGHT_CONNECTED)
    if count > 1:
        sizes = np.bincount(labelled.ravel())
        sizes[0] = 0
        mask = labelled == sizes.argmax()

    # 1-pixel zero border removes all bounds checks during the walk
    padded = np.zeros((mask.shape[0] + 2, mask.shape[1] + 2), dtype=bool)
    padded[1:-1, 1:-1] = mask
    ys, xs = np.nonzero(padded)
    first = np.lexsort((xs, ys))[0]
    start = (int(xs[first]), int(ys[first]))

    # topmost-leftmost start pixel: its west neighbor is background
    back = (start[0] - 1, start[1])
    points = [start]
    current = start
    first_edge: tuple[tuple[int, int], tuple[int, int]] | None = None
    for _ in range(4 * int(padded.sum()) + 8):
        offset = (back[0] - current[0], back[1] - current[1])
        scan_from = _MOORE.index(offset)
        nxt: tuple[int, int] | None = None
        for step in range(1, 9):
            dx, dy = _MOORE[(scan_from + step) % 8]
            candidate = (current[0] + dx, current[1] + dy)
            if padded[candidate[1], candidate[0]]:
                nxt = candidate
                break
            back = candidate
        if nxt is None:
            break  # isolated pixel: the contour is that single point
        if first_edge is None:
            first_edge = (current, nxt)
        elif (current, nxt) == first_edge:
            break
        points.append(nxt)
        current = nxt
    else:
        raise RuntimeError("contour tracing failed to close")
    if len(points) > 1 and points[-1] == points[0]:
        points.pop()
    return np.asarray(points, dtype=np.float64) - 1.0  # undo the pad offset


def polygon_area(points: np.ndarray) -> float:
    """Signed shoelace area of a closed polygon (last edge implied)."""
    pts = np.asarray(points, dtype=np.float64)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygon_centroid(points: np.ndarray) -> np.ndarray:
    """Area centroid of a closed polygon.

    Degenerate polygons (near-zero area, e.g. a collinear contour)
    fall back to the vertex mean.
    """
    pts = np.asarray(points, dtype=np.float64)
    area = polygon_area(pts)
    if abs(area) < 1e-9:
        return pts.mean(axis=0)
    x, y = pts[:, 0], pts[:, 1]
    cross = x * np.roll(y, -1) - np.roll(x, -1) * y
    cx = float(np.sum((x + np.roll(x, -1)) * cross)) / (6.0 * area)
    cy = float(np.sum((y + np.roll(y, -1)) * cross)) / (6.0 * area)
    return np.array([cx, cy])


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def convex_hull_indices(points: np.ndarray) -> np.ndarray:
    """Convex hull of a point set, as indices into ``points``.

    Monotone chain over the lexicographically sorted points; collinear
    and duplicate points are dropped so every returned vertex is a
    strict corner.  Hull order is the chain order (one full loop);
    sort the result to walk vertices in contour order.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected an (N, 2) point array, got shape {pts.shape}")
    n = len(pts)
    if n == 0:
        raise ValueError("cannot take the hull of zero points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    if n == 1:
        return np.array([0])

    def build(indices: np.ndarray) -> list[int]:
        chain: list[int] = []
        for i in indices:
            while len(chain) >= 2 and _cross(pts[chain[-2]], pts[chain[-1]], pts[i]) <= 0:
                chain.pop()
            chain.append(int(i))
        return chain

    lower = build(order)
    upper = build(order[::-1])
    hull = lower[:-1] + upper[:-1]
    if not hull:  # every point identical: both chains collapsed
        return np.array([int(order[0])])
    return np.asarray(hull, dtype=np.intp)


@dataclass(frozen=True)
class ConvexityDefect:
    """One boundary arc between consecutive hull vertices.

    ``start``/``end`` are hull vertices (contour indices), ``far`` is
    the arc point farthest from the chord, and ``depth`` its
    perpendicular distance in pixels.
    """

    start: int
    end: int
    far: int
    depth: float


def convexity_defects(points: np.ndarray, hull_indices: np.ndarray) -> list[ConvexityDefect]:
    """Deepest deviation of the contour from each hull edge.

    The hull indices are walked in contour order; for every pair of
    consecutive hull vertices the contour arc strictly between them is
    examined (arcs with no interior points yield no defect).
    """
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    hull = np.unique(np.asarray(hull_indices, dtype=np.intp) % n)
    defects: list[ConvexityDefect] = []
    if len(hull) < 2:
        return defects
    for a, b in zip(hull, np.roll(hull, -1)):
        stop = b if b > a else b + n
        arc = np.arange(a + 1, stop) % n
        if arc.size == 0:
            continue
        chord = pts[b] - pts[a]
        length = float(np.hypot(chord[0], chord[1]))
        if length == 0.0:
            continue
        rel = pts[arc] - pts[a]
        dist = np.abs(rel[:, 0] * chord[1] - rel[:, 1] * chord[0]) / length
        deepest = int(np.argmax(dist))
        defects.append(ConvexityDefect(int(a), int(b), int(arc[deepest]), float(dist[deepest])))
    return defects


def vertex_angle(points: np.ndarray, index: int, step: int) -> float:
    """Interior opening angle (degrees) at one contour vertex.

    The angle is measured between the flank points ``step`` contour
    positions before and after the vertex, as atan2(|cross|, dot) of
    the two flank vectors -- exact for perpendicular integer offsets,
    where the law of cosines lands a hair under 90 and would leak
    right-angle corners past an acute-angle gate.  Degenerate flanks
    (a flank coinciding with the vertex) count as flat, 180 degrees.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    p0 = pts[index % n]
    u = pts[(index - step) % n] - p0
    v = pts[(index + step) % n] - p0
    if not (u.any() and v.any()):
        return 180.0
    cross = u[0] * v[1] - u[1] * v[0]
    return float(np.degrees(np.arctan2(abs(cross), float(np.dot(u, v)))))


def single_linkage(points: np.ndarray, cutoff: float) -> list[list[int]]:
    """Single-linkage clusters: merge while the nearest pair is < cutoff.

    Returns clusters as sorted member-index lists, ordered by their
    smallest member.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if np.hypot(*(pts[i] - pts[j])) < cutoff:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda members: members[0])
