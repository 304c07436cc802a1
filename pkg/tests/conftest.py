import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lipgroove.synthetic import synthetic_lip  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def lip():
    """The bundled synthetic lip print and its groove ground truth."""
    return synthetic_lip()


@pytest.fixture(scope="session")
def lip_path():
    return os.path.join(DATA, "synthetic_lip.pgm")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def vertical_step(h=5, w=5, col=2, lo=0, hi=255):
    img = np.full((h, w), lo, dtype=np.uint8)
    img[:, col:] = hi
    return img


def horizontal_step(h=5, w=5, row=2, lo=0, hi=255):
    return vertical_step(w, h, row, lo, hi).T.copy()
