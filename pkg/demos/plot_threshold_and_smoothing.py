"""
Thresholding and smoothing a lip image
======================================

The iterative mean threshold separates the dark lip from a white
background, then repeated Gaussian passes flatten the texture.
"""

import numpy as np

from lipgroove import blacken_background, gaussian_kernel, iterative_threshold, segment, smooth
from lipgroove.synthetic import synthetic_lip

image, truth = synthetic_lip()
print("image", image.shape, image.dtype)

# the trace starts at the image mean and ends with the confirming step
trace = iterative_threshold(image)
print("thresholds visited:", [round(t, 3) for t in trace.iterations])
print("threshold used:", trace.final)

mask = segment(image, trace.final)
print("object pixels:", int(mask.sum()), "of", mask.size)

# background goes to zero, lip pixels are kept as they were
lips = blacken_background(image, mask)

kernel = gaussian_kernel(7, 1.4)
print("kernel sum:", kernel.sum())
for passes in (1, 2, 4):
    out = smooth(lips, kernel, passes)
    print(f"{passes} pass(es): std inside lip = {out[mask].std():.2f}")
