"""
Sobel and Canny on a step edge
==============================

Small rasters make the operators easy to read by eye.
"""

import numpy as np

from lipgroove import CannyParams, canny, gradient, sobel_horizontal, sobel_vertical

step = np.zeros((8, 8), np.uint8)
step[:, 4:] = 255

# the vertical operator responds to left/right changes
print(sobel_vertical(step).astype(int))
print("horizontal operator max:", np.abs(sobel_horizontal(step)).max())

field = gradient(step)
print("peak magnitude:", field.magnitude.max())

# one-pixel-wide edge on every row after non-maximum suppression
edges = canny(step, CannyParams(sigma=1.0, kernel_size=5, low=20.0, high=50.0))
print(edges.astype(int))
print("edge pixels per row:", edges.sum(axis=1))
