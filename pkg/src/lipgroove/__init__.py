"""Lip-print groove extraction, statistical lip ratios and template matching."""

from .edges import (
    CannyParams,
    GradientField,
    canny,
    gradient,
    hysteresis,
    non_max_suppression,
    sobel_horizontal,
    sobel_vertical,
)
from .features import (
    BoundingBox,
    LipRatios,
    MatchConfig,
    MatchReport,
    Template,
    bounding_box,
    build_template,
    compute_ratios,
    identify,
    jaccard,
    match_score,
    split_lips,
)
from .filters import REPLICATE, ZERO, convolve, gaussian_kernel, smooth
from .pipeline import PIPELINE_CANNY, GrooveResult, PipelineConfig, dump_stages, extract_grooves
from .raster import complement, load_pnm, read_pnm, rescale_to_u8, save_pgm, to_grayscale, write_pgm
from .store import enroll, load_all, parse_template, serialize_template
from .thresholding import ThresholdTrace, blacken_background, iterative_threshold, mean_intensity, segment

__version__ = "0.1.0"
