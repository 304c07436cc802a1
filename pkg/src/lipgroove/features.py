"""Statistical lip ratios, templates and two-stage matching."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateLip, NoObject

MAP_WIDTH = 128
MAP_HEIGHT = 64


@dataclass(frozen=True)
class BoundingBox:
    top: int
    left: int
    bottom: int
    right: int

    @property
    def height(self):
        return self.bottom - self.top + 1

    @property
    def width(self):
        return self.right - self.left + 1


@dataclass(frozen=True)
class LipRatios:
    upper_lower_height_ratio: float
    upper_height_width_ratio: float


@dataclass(eq=False)
class Template:
    """One enrolled lip print.

    ``h_map`` and ``v_map`` are boolean arrays of shape ``(64, 128)``
    (rows x columns). ``source_dims`` is informational and is not persisted.
    """

    id: str
    ratios: LipRatios
    h_map: np.ndarray
    v_map: np.ndarray
    source_dims: tuple = field(default=None)

    def __post_init__(self):
        if not self.id or any(ord(c) < 32 or ord(c) == 127 for c in self.id):
            raise ValueError(f"invalid template id {self.id!r}")
        self.h_map = np.asarray(self.h_map, dtype=bool)
        self.v_map = np.asarray(self.v_map, dtype=bool)
        for m in (self.h_map, self.v_map):
            if m.shape != (MAP_HEIGHT, MAP_WIDTH):
                raise ValueError(f"template maps must be {MAP_HEIGHT}x{MAP_WIDTH}, got {m.shape}")

    def __eq__(self, other):
        if not isinstance(other, Template):
            return NotImplemented
        return (
            self.id == other.id
            and self.ratios == other.ratios
            and np.array_equal(self.h_map, other.h_map)
            and np.array_equal(self.v_map, other.v_map)
        )


@dataclass(frozen=True)
class MatchConfig:
    ratio_tol: float = 0.15
    accept: float = 0.60


@dataclass(frozen=True)
class MatchReport:
    ratio_gate_passed: bool
    ratio_distance: float
    groove_score: float
    accepted: bool


def bounding_box(mask):
    mask = np.asarray(mask, dtype=bool)
    rows = np.flatnonzero(mask.any(axis=1))
    cols = np.flatnonzero(mask.any(axis=0))
    if rows.size == 0:
        raise NoObject("segment mask has no object pixels")
    return BoundingBox(int(rows[0]), int(cols[0]), int(rows[-1]), int(cols[-1]))


def split_lips(mask, bb=None):
    """Locate the mouth line and measure upper and lower lip heights.

    The mouth row is the row with the fewest object pixels inside the
    central half of the box (ties go to the topmost row). Heights are
    measured from the box edges to that row, so they sum to
    ``bb.bottom - bb.top``.
    """
    mask = np.asarray(mask, dtype=bool)
    bb = bb or bounding_box(mask)
    h = bb.height
    if h < 3:
        raise DegenerateLip(f"bounding box only {h} rows tall")
    start = bb.top + h // 4
    stop = max(bb.top + (3 * h) // 4, start + 1)
    counts = mask[start:stop, bb.left : bb.right + 1].sum(axis=1)
    mouth_row = start + int(np.argmin(counts))  # argmin returns the first minimum
    return mouth_row, mouth_row - bb.top, bb.bottom - mouth_row


def compute_ratios(mask):
    bb = bounding_box(mask)
    _, upper_h, lower_h = split_lips(mask, bb)
    if upper_h <= 0 or lower_h <= 0:
        raise DegenerateLip(f"upper height {upper_h}, lower height {lower_h}")
    return LipRatios(upper_h / lower_h, upper_h / bb.width)


def resample_nearest(grid, height=MAP_HEIGHT, width=MAP_WIDTH):
    """Nearest-neighbor resize sampling source pixel centres."""
    grid = np.asarray(grid)
    src_h, src_w = grid.shape
    # integer form of floor((dst + 0.5) * src / dst)
    rows = ((2 * np.arange(height) + 1) * src_h) // (2 * height)
    cols = ((2 * np.arange(width) + 1) * src_w) // (2 * width)
    return grid[rows[:, None], cols[None, :]]


def build_template(template_id, result):
    """Crop both groove maps to the lip box and normalize them to 128x64."""
    bb = bounding_box(result.mask)
    ratios = compute_ratios(result.mask)
    crop = (slice(bb.top, bb.bottom + 1), slice(bb.left, bb.right + 1))
    h, w = result.mask.shape
    return Template(
        id=template_id,
        ratios=ratios,
        h_map=resample_nearest(result.horizontal[crop]),
        v_map=resample_nearest(result.vertical[crop]),
        source_dims=(w, h),
    )


def jaccard(a, b):
    """|A & B| / |A | B| over set bits; two empty maps score 1."""
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    union = np.count_nonzero(a | b)
    if union == 0:
        return 1.0
    return np.count_nonzero(a & b) / union


def match_score(a, b, cfg=None):
    cfg = cfg or MatchConfig()
    ratio_distance = max(
        abs(a.ratios.upper_lower_height_ratio - b.ratios.upper_lower_height_ratio),
        abs(a.ratios.upper_height_width_ratio - b.ratios.upper_height_width_ratio),
    )
    gate = ratio_distance <= cfg.ratio_tol
    score = (jaccard(a.h_map, b.h_map) + jaccard(a.v_map, b.v_map)) / 2
    return MatchReport(
        ratio_gate_passed=gate,
        ratio_distance=ratio_distance,
        groove_score=score,
        accepted=gate and score >= cfg.accept,
    )


def identify(probe, gallery, cfg=None):
    """Best accepted gallery entry as ``(id, MatchReport)``, or ``None``.

    Highest groove score wins; equal scores go to the smallest id.
    """
    best = None
    for candidate in gallery:
        report = match_score(probe, candidate, cfg)
        if not report.accepted:
            continue
        key = (-report.groove_score, candidate.id)
        if best is None or key < best[0]:
            best = (key, candidate.id, report)
    if best is None:
        return None
    return best[1], best[2]
