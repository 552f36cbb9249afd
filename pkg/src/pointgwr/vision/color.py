"""Color-space conversions used by the segmentation stages.

Both conversions are fixed-matrix, full-range definitions so that a
given RGB image always produces the same masks:

* YCbCr follows BT.601 full range with half-up rounding to integers --
  the (Cb, Cr) pair indexes the skin histograms, so the quantization
  must be bit-stable.
* HSV uses the hexcone model with H in [0, 360) degrees and S, V in
  [0, 1]; hue of achromatic pixels is 0 by convention.
"""

from __future__ import annotations

import numpy as np

def rgb_to_ycbcr(rgb: np.ndarray) -> np.ndarray:
    """Convert an RGB array (..., 3) to uint8 YCbCr.

    Values are rounded half-up (0.5 goes to 1) and clamped to [0, 255];
    this is the exact quantization the skin histograms are built on.
    """
    rgb = np.asarray(rgb, dtype=np.float64)
    if rgb.shape[-1] != 3:
        raise ValueError(f"expected an RGB array with a trailing 3-channel axis, got {rgb.shape}")
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    # evaluated term by term, not as a matrix product: the summation
    # order decides which side of .5 a boundary value lands on, and the
    # (Cb, Cr) quantization must be reproducible from the formulas alone
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    ycc = np.stack([y, cb, cr], axis=-1)
    return np.clip(np.floor(ycc + 0.5), 0.0, 255.0).astype(np.uint8)


def rgb_to_hsv(rgb: np.ndarray) -> np.ndarray:
    """Convert an RGB array (..., 3, values 0-255) to float HSV.

    Returns an array of the same shape with H in degrees [0, 360) and
    S, V in [0, 1].
    """
    rgb = np.asarray(rgb, dtype=np.float64) / 255.0
    if rgb.shape[-1] != 3:
        raise ValueError(f"expected an RGB array with a trailing 3-channel axis, got {rgb.shape}")
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    v = rgb.max(axis=-1)
    c = v - rgb.min(axis=-1)
    safe = np.where(c > 0, c, 1.0)
    h = np.select(
        [c == 0, v == r, v == g],
        [0.0, ((g - b) / safe) % 6.0, (b - r) / safe + 2.0],
        default=(r - g) / safe + 4.0,
    )
    s = np.where(v > 0, c / np.where(v > 0, v, 1.0), 0.0)
    return np.stack([60.0 * h, s, v], axis=-1)
