"""Image loading and saving for the vision pipeline.

Thin wrappers around Pillow that pin the array contract used
everywhere else: RGB images are (H, W, 3) uint8 and masks are (H, W)
uint8 with 255 for foreground.  Load accepts any format Pillow can
decode, which covers the PNG and binary PPM (P6) files the rest of the
tooling writes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image


def load_rgb(path: str | Path) -> np.ndarray:
    """Read an image file as an (H, W, 3) uint8 RGB array."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def save_rgb(path: str | Path, image: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 RGB array; format follows the suffix."""
    image = np.ascontiguousarray(image, dtype=np.uint8)
    if image.ndim != 3 or image.shape[-1] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB array, got shape {image.shape}")
    Image.fromarray(image, mode="RGB").save(path)


def save_mask(path: str | Path, mask: np.ndarray) -> None:
    """Write a 2-D mask as an 8-bit grayscale image.

    Boolean input is scaled to {0, 255}; integer input is written
    as-is so already-scaled masks round-trip unchanged.
    """
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {mask.shape}")
    if mask.dtype == bool:
        mask = mask.astype(np.uint8) * 255
    Image.fromarray(np.ascontiguousarray(mask, dtype=np.uint8), mode="L").save(path)


def load_mask(path: str | Path) -> np.ndarray:
    """Read an image file as an (H, W) uint8 grayscale mask."""
    with Image.open(path) as img:
        return np.asarray(img.convert("L"), dtype=np.uint8)
