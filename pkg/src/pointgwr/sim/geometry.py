"""Tabletop scene geometry and the table-to-image projection.

The physical layout is a 40 x 40 cm table area between a small robot and
a standing subject.  Objects are 5.8 cm cubes placed on two rows parallel
to the table edge: row 1 lies 28 cm from the robot (65 cm from the
subject), row 2 lies 21 cm from the robot (72 cm from the subject), so in
the robot's camera image row 1 appears above row 2.  The subject stands
a fixed 100 cm from the robot with a 20 cm gap to the table and points
with one hand reaching into the upper part of the frame.

The camera is assumed to sit about 30 cm above the table surface at the
robot's edge, looking across; that viewpoint is baked into the fixed
table-corner correspondences below, from which a plane homography is
solved.  Table coordinates are (x, depth) in centimeters: x runs left to
right in the image, depth away from the robot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..features import FeatureBounds


def homography_from_points(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Solve the 3x3 plane homography mapping 4 source points to 4 targets."""
    src = np.asarray(src, dtype=np.float64)
    dst = np.asarray(dst, dtype=np.float64)
    if src.shape != (4, 2) or dst.shape != (4, 2):
        raise ValueError("exactly four 2-d correspondences required")
    rows, rhs = [], []
    for (x, y), (u, v) in zip(src, dst):
        rows.append([x, y, 1, 0, 0, 0, -u * x, -u * y])
        rows.append([0, 0, 0, x, y, 1, -v * x, -v * y])
        rhs += [u, v]
    h = np.linalg.solve(np.array(rows), np.array(rhs))
    return np.append(h, 1.0).reshape(3, 3)


def apply_homography(H: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Apply H to points of shape (..., 2)."""
    pts = np.asarray(pts, dtype=np.float64)
    ones = np.ones(pts.shape[:-1] + (1,))
    hom = np.concatenate([pts, ones], axis=-1) @ H.T
    return hom[..., :2] / hom[..., 2:3]


@dataclass(frozen=True)
class TableGeometry:
    """Scene constants: physical layout (cm) plus the camera frame (px)."""

    subject_distance_cm: float = 100.0   # robot to subject
    subject_gap_cm: float = 20.0         # subject to table edge
    row1_robot_cm: float = 28.0          # row 1 to robot
    row1_subject_cm: float = 65.0        # row 1 to subject
    row2_robot_cm: float = 21.0          # row 2 to robot
    row2_subject_cm: float = 72.0        # row 2 to subject
    table_w_cm: float = 40.0
    table_d_cm: float = 40.0
    cube_cm: float = 5.8
    camera_height_cm: float = 30.0

    image_w: int = 1400
    image_h: int = 1500

    # Image positions of the table corners (near edge = robot side,
    # bottom of the frame): ((x_cm, depth_cm), (px, py)) for the four
    # corners, consistent with the assumed camera height.
    near_left_px: tuple[float, float] = (200.0, 1470.0)
    near_right_px: tuple[float, float] = (1200.0, 1470.0)
    far_left_px: tuple[float, float] = (230.0, 890.0)
    far_right_px: tuple[float, float] = (1170.0, 890.0)

    # Where the pointing hand enters the frame: the subject reaches over
    # the far table edge, so the anchor hovers a little above it (px
    # ranges).  The arm also swings sideways toward the target --
    # anchor_x_track is the fraction of the target's lateral offset that
    # the anchor follows.  The fingertip sits a sampled fraction of the
    # way from the anchor to the aim point -- the extended arm reaches
    # proportionally farther for farther targets, which is what encodes
    # target depth in the features.  hand_len is the visible hand
    # extent behind the tip (px).
    anchor_x_px: tuple[float, float] = (693.0, 707.0)
    anchor_y_px: tuple[float, float] = (560.0, 580.0)
    anchor_x_track: float = 1.0
    reach_frac: tuple[float, float] = (0.49, 0.51)
    hand_len_px: tuple[float, float] = (175.0, 195.0)

    def __post_init__(self) -> None:
        src = np.array(
            [
                [0.0, 0.0],
                [self.table_w_cm, 0.0],
                [0.0, self.table_d_cm],
                [self.table_w_cm, self.table_d_cm],
            ]
        )
        dst = np.array(
            [self.near_left_px, self.near_right_px, self.far_left_px, self.far_right_px]
        )
        H = homography_from_points(src, dst)
        object.__setattr__(self, "_H", H)
        object.__setattr__(self, "_H_inv", np.linalg.inv(H))

    # ------------------------------------------------------------- projection

    def project(self, pts_cm: np.ndarray) -> np.ndarray:
        """Table-plane (x_cm, depth_cm) -> image pixels, shape-preserving."""
        return apply_homography(self._H, pts_cm)

    def unproject(self, pts_px: np.ndarray) -> np.ndarray:
        """Image pixels -> table-plane centimeters."""
        return apply_homography(self._H_inv, pts_px)

    def lateral_scale(self, x_cm: float, depth_cm: float) -> float:
        """Pixels per lateral centimeter at a table position."""
        p = self.project(np.array([[x_cm - 0.5, depth_cm], [x_cm + 0.5, depth_cm]]))
        return float(abs(p[1, 0] - p[0, 0]))

    def row_depth(self, row: int) -> float:
        if row == 1:
            return self.row1_robot_cm
        if row == 2:
            return self.row2_robot_cm
        raise ValueError(f"row must be 1 or 2, got {row}")

    @property
    def x_center_range_cm(self) -> tuple[float, float]:
        """Valid cube-center lateral positions (half a cube off each edge)."""
        half = self.cube_cm / 2
        return (half, self.table_w_cm - half)

    # -------------------------------------------------------- feature scaling

    def feature_bounds(self, pad_px: float = 20.0) -> FeatureBounds:
        """Fixed scaling bounds for the gesture feature space.

        Derived from the hand zone and the projected target region: the
        envelope of every fingertip/hand-centroid position reachable by an
        in-scenario gesture, padded by ``pad_px`` for positional noise.
        Gestures outside this envelope scale to coordinates outside [0, 1],
        which makes off-scenario inputs look distant -- exactly what the
        noise gate needs.
        """
        x_lo, x_hi = self.x_center_range_cm
        corners_cm = np.array(
            [
                [x_lo, self.row2_robot_cm],
                [x_hi, self.row2_robot_cm],
                [x_lo, self.row1_robot_cm],
                [x_hi, self.row1_robot_cm],
            ]
        )
        targets = self.project(corners_cm)
        # Cube bbox centroids sit above the footprint center; widen the
        # target band upward by a nominal bbox height.
        bbox_h = 2.0 * self.cube_cm * self.lateral_scale(self.table_w_cm / 2, self.row1_robot_cm)
        band = np.vstack([targets, targets - [0.0, bbox_h]])
        home_mid = (self.anchor_x_px[0] + self.anchor_x_px[1]) / 2
        pts = []
        for tgt in band:
            for hx in self.anchor_x_px:
                ax = hx + self.anchor_x_track * (tgt[0] - home_mid)
                for ay in self.anchor_y_px:
                    anchor = np.array([ax, ay])
                    d = tgt - anchor
                    u = d / np.linalg.norm(d)
                    for frac in self.reach_frac:
                        tip = anchor + frac * d
                        pts.append(tip)
                        for hand in self.hand_len_px:
                            pts.append(tip - hand * u)
        pts = np.array(pts)
        return FeatureBounds(
            alpha=(0.0, 180.0),
            x=(float(pts[:, 0].min() - pad_px), float(pts[:, 0].max() + pad_px)),
            y=(float(pts[:, 1].min() - pad_px), float(pts[:, 1].max() + pad_px)),
        )
