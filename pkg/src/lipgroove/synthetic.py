"""Synthetic lip prints with known groove positions.

The generated image is a dark ellipse on a white ground, split by a thin
white mouth line into an upper and a lower lip, with straight dark grooves
ruled across it. Groove coordinates are returned alongside the image so
tests can check the extracted maps against them.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LipGroundTruth:
    vertical_grooves: tuple  # column centres
    horizontal_grooves: tuple  # row centres
    mouth_row: int
    center: tuple  # (row, col)
    semi_axes: tuple  # (rows, cols)


def synthetic_lip(
    width=256,
    height=192,
    lip_level=150,
    groove_level=0,
    background=255,
    groove_width=7,
    mouth_width=3,
):
    """Render the fixture; returns ``(uint8 image, LipGroundTruth)``."""
    cy, cx = height // 2, width // 2
    b, a = int(round(0.36 * height)), int(round(0.42 * width))
    yy, xx = np.mgrid[0:height, 0:width]
    inside = ((yy - cy) / b) ** 2 + ((xx - cx) / a) ** 2 <= 1.0

    img = np.full((height, width), background, dtype=np.uint8)
    img[inside] = lip_level

    half = groove_width // 2
    vertical = tuple(cx + int(round(f * a)) for f in (-0.55, -0.2, 0.3))
    for x in vertical:
        img[inside & (np.abs(xx - x) <= half)] = groove_level

    mouth = cy - int(round(0.3 * b))
    horizontal = (cy - int(round(0.65 * b)), cy + int(round(0.5 * b)))
    for y in horizontal:
        img[inside & (np.abs(yy - y) <= half)] = groove_level

    mouth_half = mouth_width // 2
    img[inside & (np.abs(yy - mouth) <= mouth_half)] = background

    truth = LipGroundTruth(
        vertical_grooves=vertical,
        horizontal_grooves=horizontal,
        mouth_row=mouth,
        center=(cy, cx),
        semi_axes=(b, a),
    )
    return img, truth


def add_noise(image, amplitude, seed=0):
    """Add i.i.d. integer noise uniform in ``[-amplitude, amplitude]``, clipped to 0..255."""
    rng = np.random.default_rng(seed)
    noise = rng.integers(-amplitude, amplitude + 1, size=np.shape(image))
    return np.clip(np.asarray(image, dtype=np.int64) + noise, 0, 255).astype(np.uint8)
