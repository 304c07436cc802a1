"""The staged groove-extraction pipeline.

Stages are labelled ``a`` through ``n``::

    a  grayscale input
    b  background blackened at the iterative threshold
    c  first Gaussian smoothing pass
    d  after all pre-passes
    e  horizontal Sobel of d        f  vertical Sobel of d
    g  smoothed e                   h  smoothed f
    i  horizontal Sobel of g        j  vertical Sobel of h
    k  complement of i              l  complement of j
    m  Canny of k (horizontal map)  n  Canny of l (vertical map)
"""

import contextlib
import os
from dataclasses import dataclass

import numpy as np

from .edges import CannyParams, canny, sobel_horizontal, sobel_vertical
from .errors import StageError
from .filters import REPLICATE, gaussian_kernel, smooth
from .raster import CLAMP_ABS_QUARTER, complement, rescale_to_u8, to_grayscale, write_pgm
from .thresholding import ThresholdTrace, blacken_background, iterative_threshold, segment

STAGE_LABELS = tuple("abcdefghijklmn")

# Canny runs on quarter-scaled Sobel output, so the 8-bit thresholds (50/20)
# are divided by the same factor of 4.
PIPELINE_CANNY = CannyParams(sigma=1.0, kernel_size=5, low=5.0, high=12.5)


@dataclass(frozen=True)
class PipelineConfig:
    epsilon: float = 1.0
    kernel_size: int = 7
    sigma: float = 1.4
    pre_passes: int = 4
    mid_passes: int = 1
    border: str = REPLICATE
    canny: CannyParams = PIPELINE_CANNY
    sobel_rescale: str = CLAMP_ABS_QUARTER
    swap_sobel_naming: bool = False
    dump_stages: bool = False

    def __post_init__(self):
        if self.pre_passes < 1:
            raise ValueError("pre_passes must be >= 1")
        if self.mid_passes < 0:
            raise ValueError("mid_passes must be >= 0")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        # validates size and sigma eagerly
        gaussian_kernel(self.kernel_size, self.sigma)


@dataclass
class GrooveResult:
    horizontal: np.ndarray
    vertical: np.ndarray
    mask: np.ndarray
    trace: ThresholdTrace
    stages: dict = None

    def __eq__(self, other):
        if not isinstance(other, GrooveResult):
            return NotImplemented
        if (self.stages is None) != (other.stages is None):
            return False
        same_stages = self.stages is None or (
            self.stages.keys() == other.stages.keys()
            and all(np.array_equal(self.stages[k], other.stages[k]) for k in self.stages)
        )
        return (
            np.array_equal(self.horizontal, other.horizontal)
            and np.array_equal(self.vertical, other.vertical)
            and np.array_equal(self.mask, other.mask)
            and self.trace == other.trace
            and same_stages
        )


@contextlib.contextmanager
def _stage(label):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(label, exc) from exc


def _edge_image(edges):
    return np.where(edges, 255, 0).astype(np.uint8)


def preprocess(image, cfg):
    """Stages a-d: grayscale, threshold and blacken, repeated smoothing.

    Returns ``(gray, trace, mask, blackened, first_pass, smoothed)``.
    """
    image = np.asarray(image)
    if image.size == 0:
        raise ValueError("empty image")
    with _stage("a"):
        gray = to_grayscale(image) if image.ndim == 3 else np.asarray(image, dtype=np.uint8)
    with _stage("b"):
        trace = iterative_threshold(gray, cfg.epsilon)
        mask = segment(gray, trace.final)
        blackened = blacken_background(gray, mask)
    kernel = gaussian_kernel(cfg.kernel_size, cfg.sigma)
    with _stage("c"):
        first = smooth(blackened, kernel, 1, cfg.border)
    with _stage("d"):
        smoothed = smooth(first, kernel, cfg.pre_passes - 1, cfg.border) if cfg.pre_passes > 1 else first
    return gray, trace, mask, blackened, first, smoothed


def _track(smoothed, sobel, labels, kernel, cfg, stages):
    """One orientation: Sobel, re-smooth, re-Sobel, complement, Canny."""
    sobel_label, smooth_label, resobel_label, comp_label, canny_label = labels
    with _stage(sobel_label):
        first = rescale_to_u8(sobel(smoothed, cfg.border), cfg.sobel_rescale)
    with _stage(smooth_label):
        resmoothed = smooth(first, kernel, cfg.mid_passes, cfg.border) if cfg.mid_passes else first
    with _stage(resobel_label):
        second = rescale_to_u8(sobel(resmoothed, cfg.border), cfg.sobel_rescale)
    with _stage(comp_label):
        inverted = complement(second)
    with _stage(canny_label):
        edges = canny(inverted, cfg.canny, cfg.border)
    stages.update(
        {
            sobel_label: first,
            smooth_label: resmoothed,
            resobel_label: second,
            comp_label: inverted,
            canny_label: _edge_image(edges),
        }
    )
    return edges


def extract_grooves(image, cfg=None):
    """Run every stage on a grayscale or RGB raster and return both groove maps."""
    cfg = cfg or PipelineConfig()
    gray, trace, mask, blackened, first, smoothed = preprocess(image, cfg)
    kernel = gaussian_kernel(cfg.kernel_size, cfg.sigma)

    horizontal_op, vertical_op = sobel_horizontal, sobel_vertical
    if cfg.swap_sobel_naming:
        horizontal_op, vertical_op = vertical_op, horizontal_op

    stages = {"a": gray, "b": blackened, "c": first, "d": smoothed}
    horizontal = _track(smoothed, horizontal_op, "egikm", kernel, cfg, stages)
    vertical = _track(smoothed, vertical_op, "fhjln", kernel, cfg, stages)

    return GrooveResult(
        horizontal=horizontal,
        vertical=vertical,
        mask=mask,
        trace=trace,
        stages={k: stages[k] for k in STAGE_LABELS} if cfg.dump_stages else None,
    )


def dump_stages(result, directory):
    """Write ``stage_<letter>.pgm`` for each recorded stage; returns the paths."""
    if result.stages is None:
        raise ValueError("result carries no stages; run with dump_stages=True")
    os.makedirs(directory, exist_ok=True)
    paths = []
    for label in STAGE_LABELS:
        path = os.path.join(directory, f"stage_{label}.pgm")
        write_pgm(path, result.stages[label])
        paths.append(path)
    return paths
