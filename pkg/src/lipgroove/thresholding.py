"""Iterative average-gray-level thresholding and background blanking.

The threshold starts at the image mean and is repeatedly replaced by the
midpoint of the means of the two pixel classes it induces (a 1-D two-cluster
k-means) until it moves by no more than ``epsilon``.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ThresholdTrace:
    iterations: tuple
    epsilon: float

    @property
    def final(self):
        # the last threshold whose update moved by at most epsilon; the value
        # after it is only the confirming recomputation
        return self.iterations[-2]


def mean_intensity(raster):
    """Arithmetic mean of all pixels (the DFT DC term divided by the pixel count)."""
    raster = np.asarray(raster)
    if raster.size == 0:
        raise ValueError("empty raster")
    # integer sum is exact; a single division keeps the result correctly rounded
    return int(raster.sum(dtype=np.int64)) / raster.size


def _class_means(hist, levels, t):
    below = levels < t
    n_below = hist[below].sum()
    n_above = hist[~below].sum()
    # an empty class takes the current threshold as its mean
    m1 = (hist[below] * levels[below]).sum() / n_below if n_below else t
    m2 = (hist[~below] * levels[~below]).sum() / n_above if n_above else t
    return m1, m2


def iterative_threshold(raster, epsilon=1.0):
    """Run the iterative mean threshold to convergence.

    Returns a :class:`ThresholdTrace` listing every threshold visited, the
    initial mean first. The last entry is the recomputation that confirmed
    convergence; ``final`` is the threshold it was computed from.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    raster = np.asarray(raster)
    hist = np.bincount(raster.ravel(), minlength=256).astype(np.int64)
    levels = np.arange(hist.size, dtype=np.int64)

    t = mean_intensity(raster)
    trace = [t]
    while True:
        m1, m2 = _class_means(hist, levels, t)
        t_new = (m1 + m2) / 2
        trace.append(t_new)
        if abs(t - t_new) <= epsilon:
            break
        t = t_new
    return ThresholdTrace(tuple(float(v) for v in trace), float(epsilon))


def segment(raster, t):
    """Object mask: True where the pixel is strictly darker than ``t``."""
    return np.asarray(raster) < t


def blacken_background(raster, mask):
    raster = np.asarray(raster)
    mask = np.asarray(mask, dtype=bool)
    if raster.shape != mask.shape:
        raise ValueError(f"mask shape {mask.shape} does not match raster shape {raster.shape}")
    return np.where(mask, raster, 0).astype(raster.dtype)
