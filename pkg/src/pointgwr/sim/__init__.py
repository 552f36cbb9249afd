"""Synthetic tabletop scenario: geometry, scenes, gestures, datasets."""

from .dataset import AMBIGUITY_CLASSES, GestureDataset, Record, generate_dataset
from .geometry import TableGeometry
from .gestures import NoiseSpec, synth_gesture
from .scenes import Scene, SceneObject, cube_bbox, enumerate_configs, gap_residuals

__all__ = [
    "AMBIGUITY_CLASSES",
    "GestureDataset",
    "NoiseSpec",
    "Record",
    "Scene",
    "SceneObject",
    "TableGeometry",
    "cube_bbox",
    "enumerate_configs",
    "gap_residuals",
    "generate_dataset",
    "synth_gesture",
]
