"""Continuous bounding-box labels attached to network nodes.

Node labels are boxes in image coordinates.  They are created and updated
alongside the node weights: a freshly inserted node takes the midpoint of
the best match's label and the observed label, and on ordinary adaptation
steps the label centroid chases the observed label centroid at the same
rate the weight chases the observation (learning rate times the node's
firing counter).  Width and height follow the same rule unless size
adaptation is switched off, in which case they stay put.

All functions are pure and operate on length-4 arrays (x1, y1, x2, y2);
:class:`~pointgwr.boxes.BoxLabel` conversions happen at the API edges.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..boxes import BoxLabel
from .params import GwrParams


def _to_cwh(box: np.ndarray) -> np.ndarray:
    """(x1, y1, x2, y2) -> (cx, cy, w, h)."""
    return np.array(
        [
            0.5 * (box[0] + box[2]),
            0.5 * (box[1] + box[3]),
            box[2] - box[0],
            box[3] - box[1],
        ]
    )


def _from_cwh(cwh: np.ndarray) -> np.ndarray:
    cx, cy, w, h = cwh
    return np.array([cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2])


def init_label(bmu_label: np.ndarray, obs_label: np.ndarray) -> np.ndarray:
    """Label of a newly inserted node.

    The new centroid is the midpoint of the best match's label centroid and
    the observed label centroid; width and height are the arithmetic means.
    """
    a, b = _to_cwh(np.asarray(bmu_label, float)), _to_cwh(np.asarray(obs_label, float))
    return _from_cwh(0.5 * (a + b))


def adapt_label(
    label: np.ndarray, obs_label: np.ndarray, eta: float, h: float, adapt_sizes: bool = True
) -> np.ndarray:
    """Move one label toward the observed label by the factor eta * h.

    The step factor lies in (0, 1], so every updated quantity lands between
    its old value and the observed value; in particular width and height
    stay strictly positive and the box stays valid.
    """
    cur = _to_cwh(np.asarray(label, float))
    obs = _to_cwh(np.asarray(obs_label, float))
    step = eta * h
    new = cur.copy()
    new[:2] = cur[:2] + step * (obs[:2] - cur[:2])
    if adapt_sizes:
        new[2:] = cur[2:] + step * (obs[2:] - cur[2:])
    return _from_cwh(new)


def adapt_labels(
    bmu_label: BoxLabel,
    neighbor_labels: Sequence[BoxLabel],
    obs_label: BoxLabel,
    params: GwrParams,
    h_bmu: float,
    h_neighbors: Sequence[float],
) -> tuple[BoxLabel, list[BoxLabel]]:
    """Adapt the best match's label and its neighbors' labels toward an observation.

    The best match moves with eta_b * h_bmu, each neighbor with
    eta_n * h_neighbor; firing counters are the values before this step's
    habituation, mirroring the weight update.
    """
    if len(neighbor_labels) != len(h_neighbors):
        raise ValueError("one firing counter per neighbor label required")
    obs = np.array(obs_label.as_tuple())
    new_bmu = adapt_label(
        np.array(bmu_label.as_tuple()), obs, params.eta_b, h_bmu, params.adapt_label_sizes
    )
    new_neighbors = [
        adapt_label(np.array(lab.as_tuple()), obs, params.eta_n, h, params.adapt_label_sizes)
        for lab, h in zip(neighbor_labels, h_neighbors)
    ]
    return BoxLabel(*new_bmu), [BoxLabel(*n) for n in new_neighbors]
