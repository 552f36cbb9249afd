"""Pointing-gesture target resolution on a tabletop.

The package covers the full pipeline: vision (skin masks, colored-object
segmentation, fingertip detection), a geometric pointing-ray baseline, a
growing-when-required network that maps gesture features to object
bounding boxes, a scene simulator for generating labelled gesture
recordings, and the prediction/evaluation stack on top.
"""

from .boxes import BoxLabel, intersection_area, iou, union_bounds
from .features import FeatureBounds, FeatureVector, fold_angle_deg
from .gwr import GwrNetwork, GwrParams, load_model, save_model
from .predictor import (
    AMBIGUOUS,
    MATCH_IOU,
    NOISE,
    RESOLVED,
    Prediction,
    label_budget,
    predict,
)
from .baseline import PHI_MIN, PointingRay, hit_quality, pointing_ray, select_target

__version__ = "0.1.0"

__all__ = [
    "AMBIGUOUS",
    "MATCH_IOU",
    "NOISE",
    "PHI_MIN",
    "RESOLVED",
    "BoxLabel",
    "FeatureBounds",
    "FeatureVector",
    "GwrNetwork",
    "GwrParams",
    "Prediction",
    "PointingRay",
    "__version__",
    "fold_angle_deg",
    "hit_quality",
    "intersection_area",
    "iou",
    "label_budget",
    "load_model",
    "pointing_ray",
    "predict",
    "save_model",
    "select_target",
    "union_bounds",
]
