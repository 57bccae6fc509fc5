import math

import numpy as np
import pytest

from prismunfold import validate


def regular_polygon(n, r=1.0, phase=0.0):
    return [(r * math.cos(phase + 2 * math.pi * k / n), r * math.sin(phase + 2 * math.pi * k / n))
            for k in range(n)]


def frustum():
    base = [(1, -1), (1, 1), (-1, 1), (-1, -1)]
    top = [(0.5, -0.5), (0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5)]
    return validate(base, top, 1.0)


@pytest.fixture
def unit_frustum():
    return frustum()


@pytest.fixture
def pent_tri():
    base = regular_polygon(5, 2.0, 0.3)
    top = [(0.4, 0.1), (-0.3, 0.5), (-0.2, -0.4)]
    return validate(base, top, 0.8)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
