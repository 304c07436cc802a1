"""Slow, obviously-correct reference implementations used only by tests."""

import math
from collections import deque

import numpy as np


def dft_dc(raster):
    """DC coefficient of a full 2-D DFT built from explicit DFT matrices.

    Every coefficient is computed from the definition (no FFT), then the
    (0, 0) entry is returned.
    """
    f = np.asarray(raster, dtype=np.float64)
    h, w = f.shape
    rows = np.exp(-2j * np.pi * np.outer(np.arange(h), np.arange(h)) / h)
    cols = np.exp(-2j * np.pi * np.outer(np.arange(w), np.arange(w)) / w)
    return (rows @ f @ cols)[0, 0]


def naive_threshold(pixels, epsilon=1.0):
    """Iterative mean threshold with full per-iteration scans of a flat pixel list."""
    t = sum(pixels) / len(pixels)
    trace = [t]
    while True:
        g1 = [p for p in pixels if p < t]
        g2 = [p for p in pixels if p >= t]
        m1 = sum(g1) / len(g1) if g1 else t
        m2 = sum(g2) / len(g2) if g2 else t
        t_new = (m1 + m2) / 2
        trace.append(t_new)
        if abs(t - t_new) <= epsilon:
            return trace
        t = t_new


def naive_correlate(raster, kernel, border="replicate"):
    h, w = len(raster), len(raster[0])
    k = len(kernel)
    r = k // 2
    out = [[0.0] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for i in range(k):
                for j in range(k):
                    yy, xx = y + i - r, x + j - r
                    if border == "replicate":
                        yy = min(max(yy, 0), h - 1)
                        xx = min(max(xx, 0), w - 1)
                        v = raster[yy][xx]
                    else:
                        v = raster[yy][xx] if 0 <= yy < h and 0 <= xx < w else 0.0
                    acc += kernel[i][j] * v
            out[y][x] = acc
    return out


def flood_fill_hysteresis(nms, low, high):
    """BFS from every strong pixel through 8-neighbors that are >= low."""
    h, w = len(nms), len(nms[0])
    edge = [[False] * w for _ in range(h)]
    queue = deque()
    for y in range(h):
        for x in range(w):
            if nms[y][x] >= high:
                edge[y][x] = True
                queue.append((y, x))
    while queue:
        y, x = queue.popleft()
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                yy, xx = y + dy, x + dx
                if 0 <= yy < h and 0 <= xx < w and not edge[yy][xx] and nms[yy][xx] >= low:
                    edge[yy][xx] = True
                    queue.append((yy, xx))
    return edge


def exhaustive_nms(magnitude, direction):
    """Per-pixel NMS with the quantization and tie rule spelled out in scalar code."""
    h, w = len(magnitude), len(magnitude[0])
    out = [[0.0] * w for _ in range(h)]
    steps = [(0, 1), (1, 1), (1, 0), (1, -1)]

    def at(y, x):
        return magnitude[y][x] if 0 <= y < h and 0 <= x < w else 0.0

    for y in range(h):
        for x in range(w):
            m = magnitude[y][x]
            if m <= 0:
                continue
            deg = math.degrees(direction[y][x]) % 180.0
            dy, dx = steps[int(math.floor((deg + 22.5) / 45.0)) % 4]
            if m >= at(y - dy, x - dx) and m > at(y + dy, x + dx):
                out[y][x] = m
    return out
