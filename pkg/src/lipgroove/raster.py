"""Pixel containers and netpbm I/O.

Rasters are plain numpy arrays indexed ``[row, column]``:

* ``uint8`` 2-D arrays are 8-bit grayscale rasters,
* ``float64`` 2-D arrays hold intermediate responses (Sobel, convolution),
* ``uint8`` arrays of shape ``(h, w, 3)`` are RGB color rasters.
"""

import re

import numpy as np

from .errors import (
    BadDimensions,
    BadMagic,
    MalformedHeader,
    MaxvalUnsupported,
    TruncatedPayload,
)

CLAMP_ABS_QUARTER = "clamp_abs_quarter"
MINMAX = "minmax"

_WHITESPACE = b" \t\n\r\v\f"
_GRAY_MAGICS = (b"P2", b"P5")
_COLOR_MAGICS = (b"P3", b"P6")


def round_half_up(values):
    """Round to nearest integer, halves going up (``2.5 -> 3``, ``-2.5 -> -2``)."""
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def to_u8(values):
    """Round half-up and clamp a float array into a uint8 raster."""
    return np.clip(round_half_up(values), 0, 255).astype(np.uint8)


def _read_header(data):
    """Return ``(magic, width, height, maxval, payload_offset)``."""
    magic = bytes(data[:2])
    if magic not in _GRAY_MAGICS + _COLOR_MAGICS:
        raise BadMagic(f"unsupported magic {magic!r}")
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data):
            if data[pos] == ord("#"):
                end = data.find(b"\n", pos)
                pos = len(data) if end < 0 else end + 1
            elif data[pos] in _WHITESPACE:
                pos += 1
            else:
                break
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        token = data[start:pos]
        if not token:
            raise TruncatedPayload("header ends before width, height and maxval")
        if not token.isdigit():
            if len(fields) < 2 and re.fullmatch(rb"[-+]\d+", token):
                raise BadDimensions(f"invalid dimension {token.decode()}")
            raise MalformedHeader(f"non-numeric header field {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise BadDimensions(f"dimensions must be positive, got {width}x{height}")
    if maxval != 255:
        raise MaxvalUnsupported(f"maxval {maxval} unsupported, only 255 is accepted")
    # exactly one whitespace byte separates the header from a binary payload
    if pos >= len(data):
        if magic in (b"P5", b"P6"):
            raise TruncatedPayload("missing payload")
    else:
        pos += 1
    return magic, width, height, maxval, pos


def load_pnm(data):
    """Parse a P2/P3/P5/P6 file with maxval 255.

    Returns a ``(h, w)`` uint8 array for grayscale input and a
    ``(h, w, 3)`` uint8 array for color input.
    """
    data = bytes(data)
    magic, width, height, _, pos = _read_header(data)
    channels = 1 if magic in _GRAY_MAGICS else 3
    count = width * height * channels

    if magic in (b"P5", b"P6"):
        payload = data[pos : pos + count]
        if len(payload) < count:
            raise TruncatedPayload(f"expected {count} payload bytes, found {len(payload)}")
        pixels = np.frombuffer(payload, dtype=np.uint8).copy()
    else:
        body = re.sub(rb"#[^\n]*", b" ", data[pos:])
        tokens = body.split()
        if len(tokens) < count:
            raise TruncatedPayload(f"expected {count} samples, found {len(tokens)}")
        try:
            values = [int(t) for t in tokens[:count]]
        except ValueError as exc:
            raise MalformedHeader(f"non-numeric sample: {exc}") from None
        if min(values) < 0 or max(values) > 255:
            raise MalformedHeader("sample outside [0, 255]")
        pixels = np.array(values, dtype=np.uint8)

    if channels == 1:
        return pixels.reshape(height, width)
    return pixels.reshape(height, width, 3)


def read_pnm(path):
    with open(path, "rb") as fh:
        return load_pnm(fh.read())


def save_pgm(raster):
    """Serialize a uint8 raster as binary P5."""
    raster = np.asarray(raster)
    if raster.dtype != np.uint8 or raster.ndim != 2:
        raise TypeError(f"save_pgm needs a 2-D uint8 raster, got {raster.dtype} with shape {raster.shape}")
    h, w = raster.shape
    return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(raster).tobytes()


def write_pgm(path, raster):
    with open(path, "wb") as fh:
        fh.write(save_pgm(raster))


def to_grayscale(color):
    """BT.601 luma with half-up rounding, computed in exact integer arithmetic."""
    color = np.asarray(color)
    if color.ndim == 2:
        return color.astype(np.uint8, copy=True)
    rgb = color.astype(np.int64)
    luma = (299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000
    return luma.astype(np.uint8)


def complement(raster):
    raster = np.asarray(raster)
    if raster.dtype != np.uint8:
        raise TypeError("complement needs a uint8 raster")
    return 255 - raster


def rescale_to_u8(raster, mode=CLAMP_ABS_QUARTER):
    """Map a float response raster onto 0..255.

    ``clamp_abs_quarter`` divides magnitudes by 4 (the largest Sobel response
    on 8-bit input is 4 * 255) and clamps; ``minmax`` stretches [min, max]
    affinely, sending a constant raster to 0.
    """
    values = np.asarray(raster, dtype=np.float64)
    if mode == CLAMP_ABS_QUARTER:
        return to_u8(np.minimum(np.abs(values) / 4.0, 255.0))
    if mode == MINMAX:
        lo, hi = values.min(), values.max()
        if hi == lo:
            return np.zeros(values.shape, dtype=np.uint8)
        return to_u8((values - lo) * (255.0 / (hi - lo)))
    raise ValueError(f"unknown rescale mode {mode!r}")
