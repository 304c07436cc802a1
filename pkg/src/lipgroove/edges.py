"""Sobel operators and the Canny edge detector.

Naming follows the structures each mask responds to: the *vertical*
operator uses the x-derivative mask and lights up vertical grooves, the
*horizontal* operator uses its transpose and lights up horizontal grooves.
"""

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .filters import REPLICATE, convolve, gaussian_kernel

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
SOBEL_Y = SOBEL_X.T.copy()

# neighbor offsets (dy, dx) along the quantized gradient direction, rows grow downward
_DIRECTION_OFFSETS = {
    0: (0, 1),  # 0 deg: along +x
    1: (1, 1),  # 45 deg
    2: (1, 0),  # 90 deg: along +y
    3: (1, -1),  # 135 deg
}


@dataclass(frozen=True)
class GradientField:
    magnitude: np.ndarray
    direction: np.ndarray


@dataclass(frozen=True)
class CannyParams:
    sigma: float = 1.0
    kernel_size: int = 5
    low: float = 20.0
    high: float = 50.0

    def __post_init__(self):
        if not 0 < self.low < self.high:
            raise ValueError(f"need 0 < low < high, got low={self.low}, high={self.high}")
        if self.kernel_size < 3 or self.kernel_size % 2 != 1:
            raise ValueError(f"kernel_size must be odd and >= 3, got {self.kernel_size}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def sobel_vertical(raster, border=REPLICATE):
    """x-derivative response; detects vertical structures."""
    return convolve(raster, SOBEL_X, border)


def sobel_horizontal(raster, border=REPLICATE):
    """y-derivative response; detects horizontal structures."""
    return convolve(raster, SOBEL_Y, border)


def gradient(raster, border=REPLICATE):
    gx = sobel_vertical(raster, border)
    gy = sobel_horizontal(raster, border)
    return GradientField(np.hypot(gx, gy), np.arctan2(gy, gx))


def quantize_direction(direction):
    """Fold angles modulo 180 degrees and snap to bins 0..3 (0, 45, 90, 135 deg)."""
    folded = np.mod(np.degrees(direction), 180.0)
    return (np.floor((folded + 22.5) / 45.0).astype(np.int64)) % 4


def _shifted(values, dy, dx):
    """``values[y + dy, x + dx]`` with zeros outside the raster."""
    h, w = values.shape
    out = np.zeros_like(values)
    ys = slice(max(0, -dy), min(h, h - dy))
    xs = slice(max(0, -dx), min(w, w - dx))
    ys_src = slice(max(0, dy), min(h, h + dy))
    xs_src = slice(max(0, dx), min(w, w + dx))
    out[ys, xs] = values[ys_src, xs_src]
    return out


def non_max_suppression(field):
    """Thin a gradient magnitude field to ridges along the gradient direction.

    A pixel survives when its magnitude is at least its backward neighbor and
    strictly above its forward neighbor. The asymmetric comparison keeps
    exactly one pixel of a plateau, so a step whose two boundary pixels carry
    equal magnitude still yields a one-pixel-wide ridge.
    """
    mag = np.asarray(field.magnitude, dtype=np.float64)
    bins = quantize_direction(field.direction)
    keep = np.zeros(mag.shape, dtype=bool)
    for b, (dy, dx) in _DIRECTION_OFFSETS.items():
        forward = _shifted(mag, dy, dx)
        backward = _shifted(mag, -dy, -dx)
        keep |= (bins == b) & (mag >= backward) & (mag > forward)
    return np.where(keep & (mag > 0), mag, 0.0)


def hysteresis(nms, low, high):
    """Double-threshold edge linking with 8-connectivity.

    Pixels ``>= high`` seed edges; pixels in ``[low, high)`` join when they are
    8-connected to a seed through other pixels ``>= low``.
    """
    if not 0 < low < high:
        raise ValueError(f"need 0 < low < high, got low={low}, high={high}")
    nms = np.asarray(nms)
    candidate = nms >= low
    labels, n = ndimage.label(candidate, structure=np.ones((3, 3), dtype=bool))
    if n == 0:
        return np.zeros(nms.shape, dtype=bool)
    seeded = np.zeros(n + 1, dtype=bool)
    seeded[labels[nms >= high]] = True
    seeded[0] = False
    return seeded[labels]


def canny(raster, params=None, border=REPLICATE):
    """Gaussian smoothing, Sobel gradient, non-maximum suppression, hysteresis.

    The internal blur stays in float: rounding it back to 8 bits creates
    gradient plateaus on low-contrast input, and NMS placement on those
    plateaus flips under one-level noise.
    """
    params = params or CannyParams()
    kernel = gaussian_kernel(params.kernel_size, params.sigma)
    smoothed = convolve(raster, kernel, border)
    thinned = non_max_suppression(gradient(smoothed, border))
    return hysteresis(thinned, params.low, params.high)
