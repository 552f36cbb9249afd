"""Target resolution on a trained network.

Inference walks four steps: gate the input on BMU activation (poses the
network never learned score low and are dismissed as noise), gather the
labels of the k nearest nodes into their bounding union A, score every
object box by overlap against A and against the BMU's own label, and
read the outcome off the candidate count -- one candidate resolves the
target, several flag an ambiguity, none is a miss.

The budget k grows slowly with network size so that A stays comparable
across differently sized networks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boxes import BoxLabel, iou, union_bounds
from .features import FeatureVector
from .gwr.network import GwrNetwork

NOISE = "noise"
RESOLVED = "resolved"
AMBIGUOUS = "ambiguous"

MATCH_IOU = 0.5


def label_budget(n_nodes: int) -> int:
    """How many node labels to pool: ceil(n * 0.01 + 5).

    Integer arithmetic throughout -- float ceil would overshoot at exact
    multiples of 100.
    """
    if n_nodes < 0:
        raise ValueError("node count must be >= 0")
    return 5 + (n_nodes + 99) // 100


@dataclass(frozen=True)
class Prediction:
    """Outcome of resolving one observation against the scene objects.

    ``matched_objects`` pairs object indices with their overlap scores,
    best first; empty for noise and for misses.
    """

    kind: str
    bmu_activation: float
    area_a: BoxLabel | None
    bmu_label: BoxLabel | None
    matched_objects: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if self.kind not in (NOISE, RESOLVED, AMBIGUOUS):
            raise ValueError(f"unknown prediction kind: {self.kind!r}")
        if (self.kind == NOISE) != (self.area_a is None):
            raise ValueError("area A must be present exactly when the input passes the gate")
        if self.kind == NOISE and self.matched_objects:
            raise ValueError("noise carries no candidates")
        if self.kind == AMBIGUOUS and len(self.matched_objects) < 2:
            raise ValueError("ambiguity needs at least two candidates")

    @property
    def target_index(self) -> int | None:
        return self.matched_objects[0][0] if self.matched_objects else None

    @property
    def is_miss(self) -> bool:
        return self.kind == RESOLVED and not self.matched_objects

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "bmu_activation": self.bmu_activation,
            "area_a": list(self.area_a.as_tuple()) if self.area_a else None,
            "bmu_label": list(self.bmu_label.as_tuple()) if self.bmu_label else None,
            "matched_objects": [[i, s] for i, s in self.matched_objects],
            "target_index": self.target_index,
        }


def predict(
    net: GwrNetwork,
    observation: FeatureVector | np.ndarray,
    objects: list[BoxLabel],
    noise_t: float | None = None,
    match_iou: float = MATCH_IOU,
) -> Prediction:
    """Resolve one observation to a target among the given object boxes."""
    if net.n_nodes < 2:
        raise ValueError("network is untrained")
    if isinstance(observation, FeatureVector):
        observation = observation.as_array()
    if noise_t is None:
        noise_t = net.params.noise_t

    bmu_id, _, dist = net.best_matching(observation)
    activation = math.exp(-dist)
    if activation < noise_t:
        return Prediction(
            kind=NOISE,
            bmu_activation=activation,
            area_a=None,
            bmu_label=None,
            matched_objects=(),
        )

    k = min(label_budget(net.n_nodes), net.n_nodes)
    labels = [net.get_node(i).label for i in net.k_nearest(observation, k)]
    area_a = union_bounds(labels)
    bmu_label = net.get_node(bmu_id).label

    scored = []
    for i, box in enumerate(objects):
        s = max(iou(area_a, box), iou(bmu_label, box))
        if s >= match_iou:
            scored.append((i, s))
    scored.sort(key=lambda t: (-t[1], t[0]))

    return Prediction(
        kind=AMBIGUOUS if len(scored) >= 2 else RESOLVED,
        bmu_activation=activation,
        area_a=area_a,
        bmu_label=bmu_label,
        matched_objects=tuple(scored),
    )
