"""Vision pipeline: skin masks, colored objects, fingertip features."""

from .color import rgb_to_hsv, rgb_to_ycbcr
from .contour import (
    ConvexityDefect,
    convex_hull_indices,
    convexity_defects,
    polygon_area,
    polygon_centroid,
    single_linkage,
    trace_contour,
    vertex_angle,
)
from .extract import (
    WLS_SCALE_PX,
    extract_features,
    features_from_geometry,
    pointing_angle,
)
from .fingertip import (
    ANGLE_STEP,
    LINKAGE_CUTOFF_PX,
    MAX_TIP_ANGLE_DEG,
    MIN_DEFECT_DEPTH_PX,
    FingertipGeometry,
    detect_fingertip,
)
from .imgio import load_mask, load_rgb, save_mask, save_rgb
from .objects import (
    DEFAULT_HUE_RANGES,
    MIN_OBJECT_AREA_PX,
    DetectedObject,
    HueRange,
    color_mask,
    segment_color_objects,
)
from .skin import DEFAULT_THETA, SkinModel, classify_skin, fit_skin_model

__all__ = [
    "ANGLE_STEP",
    "DEFAULT_HUE_RANGES",
    "DEFAULT_THETA",
    "LINKAGE_CUTOFF_PX",
    "MAX_TIP_ANGLE_DEG",
    "MIN_DEFECT_DEPTH_PX",
    "MIN_OBJECT_AREA_PX",
    "WLS_SCALE_PX",
    "ConvexityDefect",
    "DetectedObject",
    "FingertipGeometry",
    "HueRange",
    "SkinModel",
    "classify_skin",
    "color_mask",
    "convex_hull_indices",
    "convexity_defects",
    "detect_fingertip",
    "extract_features",
    "features_from_geometry",
    "fit_skin_model",
    "load_mask",
    "load_rgb",
    "pointing_angle",
    "polygon_area",
    "polygon_centroid",
    "rgb_to_hsv",
    "rgb_to_ycbcr",
    "save_mask",
    "save_rgb",
    "segment_color_objects",
    "single_linkage",
    "trace_contour",
    "vertex_angle",
]
