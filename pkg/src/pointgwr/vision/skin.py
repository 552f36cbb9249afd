"""Histogram-ratio skin classifier in CbCr space.

A pixel is skin when the likelihood ratio

    (H_skin[cb, cr] / T_s) / (H_nonskin[cb, cr] / T_n)  >=  theta

holds, where ``H_skin`` and ``H_nonskin`` count training pixels per
(Cb, Cr) cell and T_s, T_n are their totals.  Luma is dropped entirely,
which is what makes the classifier robust against shading across the
hand.  The comparison is evaluated in cross-multiplied integer form so
the decision boundary is exact: a cell whose ratio equals theta is
skin.  Cells never seen in the non-skin class count as skin whenever
the skin class saw them, and cells seen in neither class are non-skin.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .color import rgb_to_ycbcr

HIST_BINS = 256
DEFAULT_THETA = 5.0

_FORMAT_VERSION = 1


def _check_hist(hist: np.ndarray, name: str) -> np.ndarray:
    hist = np.asarray(hist, dtype=np.int64)
    if hist.shape != (HIST_BINS, HIST_BINS):
        raise ValueError(f"{name} must be ({HIST_BINS}, {HIST_BINS}), got {hist.shape}")
    if (hist < 0).any():
        raise ValueError(f"{name} contains negative counts")
    return hist


@dataclass(frozen=True)
class SkinModel:
    """Trained skin/non-skin histograms plus the ratio threshold."""

    skin_hist: np.ndarray
    nonskin_hist: np.ndarray
    theta: float = DEFAULT_THETA

    def __post_init__(self) -> None:
        object.__setattr__(self, "skin_hist", _check_hist(self.skin_hist, "skin_hist"))
        object.__setattr__(self, "nonskin_hist", _check_hist(self.nonskin_hist, "nonskin_hist"))
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")

    @property
    def t_s(self) -> int:
        """Total number of skin training pixels."""
        return int(self.skin_hist.sum())

    @property
    def t_n(self) -> int:
        """Total number of non-skin training pixels."""
        return int(self.nonskin_hist.sum())

    def decision_lut(self) -> np.ndarray:
        """Boolean (Cb, Cr) table: True where the cell classifies as skin.

        The ratio test is cross-multiplied to ``s * T_n >= theta * n * T_s``
        so no division is involved and the theta boundary is hit exactly.
        """
        s = self.skin_hist.astype(np.float64)
        n = self.nonskin_hist.astype(np.float64)
        return np.where(n > 0, s * self.t_n >= self.theta * n * self.t_s, s > 0)

    def to_dict(self) -> dict:
        def pack(hist: np.ndarray) -> list[list[int]]:
            cb, cr = np.nonzero(hist)
            return [[int(a), int(b), int(hist[a, b])] for a, b in zip(cb, cr)]

        return {
            "format_version": _FORMAT_VERSION,
            "theta": self.theta,
            "skin": pack(self.skin_hist),
            "nonskin": pack(self.nonskin_hist),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SkinModel":
        version = data.get("format_version")
        if version != _FORMAT_VERSION:
            raise ValueError(f"unsupported skin model format_version: {version!r}")

        def unpack(triples: list) -> np.ndarray:
            hist = np.zeros((HIST_BINS, HIST_BINS), dtype=np.int64)
            for cb, cr, count in triples:
                hist[int(cb), int(cr)] = int(count)
            return hist

        return cls(unpack(data["skin"]), unpack(data["nonskin"]), float(data["theta"]))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "SkinModel":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _pixel_hist(pixels: np.ndarray, name: str) -> np.ndarray:
    pixels = np.asarray(pixels, dtype=np.int64)
    if pixels.ndim != 2 or pixels.shape[1] != 2:
        raise ValueError(f"{name} must be an (N, 2) array of (Cb, Cr) values, got {pixels.shape}")
    if len(pixels) == 0:
        raise ValueError(f"{name} is empty; both classes need training pixels")
    if pixels.min() < 0 or pixels.max() >= HIST_BINS:
        raise ValueError(f"{name} values must lie in [0, {HIST_BINS - 1}]")
    hist = np.zeros((HIST_BINS, HIST_BINS), dtype=np.int64)
    np.add.at(hist, (pixels[:, 0], pixels[:, 1]), 1)
    return hist


def fit_skin_model(
    skin_pixels: np.ndarray,
    nonskin_pixels: np.ndarray,
    theta: float = DEFAULT_THETA,
) -> SkinModel:
    """Build a :class:`SkinModel` from labelled (Cb, Cr) pixel samples."""
    return SkinModel(
        skin_hist=_pixel_hist(skin_pixels, "skin_pixels"),
        nonskin_hist=_pixel_hist(nonskin_pixels, "nonskin_pixels"),
        theta=theta,
    )


def classify_skin(model: SkinModel, image: np.ndarray) -> np.ndarray:
    """Classify an (H, W, 3) RGB image into a uint8 skin mask (255 = skin)."""
    ycc = rgb_to_ycbcr(image)
    lut = model.decision_lut()
    mask = lut[ycc[..., 1].astype(np.intp), ycc[..., 2].astype(np.intp)]
    return mask.astype(np.uint8) * 255
