"""2-D correlation with explicit border handling, Gaussian kernels, smoothing."""

import numpy as np

from .raster import to_u8

REPLICATE = "replicate"
ZERO = "zero"

_PAD_MODES = {REPLICATE: "edge", ZERO: "constant"}


def gaussian_kernel(size, sigma):
    """Normalized ``size x size`` Gaussian weights."""
    if size < 3 or size % 2 != 1:
        raise ValueError(f"kernel size must be odd and >= 3, got {size}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    r = (size - 1) // 2
    x = np.arange(-r, r + 1, dtype=np.float64)
    sq = x[:, None] ** 2 + x[None, :] ** 2
    w = np.exp(-sq / (2.0 * sigma * sigma))
    return w / w.sum()


def convolve(raster, kernel, border=REPLICATE):
    """Apply ``kernel`` as written (correlation orientation).

    ``out[y, x] = sum_{i,j} kernel[i, j] * in[y + i - r, x + j - r]`` with
    out-of-range reads resolved by ``border``. Output is float64 with the
    input's shape.
    """
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2 or kernel.shape[0] != kernel.shape[1] or kernel.shape[0] % 2 != 1:
        raise ValueError(f"kernel must be square with odd size, got shape {kernel.shape}")
    if border not in _PAD_MODES:
        raise ValueError(f"unknown border policy {border!r}")
    src = np.asarray(raster, dtype=np.float64)
    if src.ndim != 2 or src.size == 0:
        raise ValueError("convolve needs a non-empty 2-D raster")

    k = kernel.shape[0]
    r = k // 2
    h, w = src.shape
    padded = np.pad(src, r, mode=_PAD_MODES[border])
    # accumulate around the centre pixel: sum(w) * c + sum(w * (v - c)) is the
    # same correlation, but flat neighbourhoods contribute exact zeros, so a
    # constant raster under a kernel summing to 1.0 comes back bit-exact
    centre = src
    out = float(kernel.sum()) * centre
    # fixed accumulation order keeps results bit-reproducible
    for i in range(k):
        for j in range(k):
            weight = kernel[i, j]
            if weight != 0.0 and (i, j) != (r, r):
                out += weight * (padded[i : i + h, j : j + w] - centre)
    return out


def smooth(raster, kernel, passes=1, border=REPLICATE):
    """Convolve ``passes`` times, rounding back to uint8 after every pass."""
    if passes < 1:
        raise ValueError("passes must be >= 1")
    out = np.asarray(raster, dtype=np.uint8)
    for _ in range(passes):
        out = to_u8(convolve(out, kernel, border))
    return out
