"""
Shared fixtures: hand-built polygons, seeded random polygons and a quiet logger
"""
import math

import numpy as np
import pytest

from core.errors import InvalidPolygonError
from core.polygon import normalize
from utils.config import load_config
from utils.logger import configure_logger

TRIANGLE = [(0, 0), (1, 0), (0, 1)]
SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
DART = [(0, 0), (2, 1), (4, 0), (2, 3)]
COMB = [(0, 0), (5, 0), (5, 3), (4, 3), (4, 1), (3, 1), (3, 3),
        (2, 3), (2, 1), (1, 1), (1, 3), (0, 3)]
SPIRAL = [(0, 0), (6, 0), (6, 6), (1, 6), (1, 2), (4, 2), (4, 4),
          (3, 4), (3, 3), (2, 3), (2, 5), (5, 5), (5, 1), (0, 1)]
# square with an ear (-1, 1) inserted between (0, 2) and (0, 0)
EARED_SQUARE = [(0, 0), (2, 0), (2, 2), (0, 2), (-1, 1)]
# the dart's reflex vertex (2, 1) squeezed onto a tiny arc; the chord (0,0)-(4,0) leaves the dart
FAILING_DART_PARTITION = [0.0, 2.0, 2.0 + 1e-6, 4.0, 2 * math.pi]


def regular_vertices(n: int, radius: float = 1.0):
    """c_k = radius * e^{2 pi i k / n}"""
    return [radius * complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
            for k in range(n)]


def star_polygon(seed: int, n: int):
    """Random simple polygon, star-shaped about the origin"""
    rng = np.random.default_rng(seed)
    while True:
        angles = np.sort(rng.uniform(0.0, 2 * math.pi, n))
        gaps = np.diff(np.append(angles, angles[0] + 2 * math.pi))
        if gaps.min() > 0.2 and gaps.max() < 0.9 * math.pi:
            break
    radii = rng.uniform(0.4, 1.6, n)
    return [complex(r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]


def convex_polygon(seed: int, n: int):
    """Random strictly convex polygon: sorted points on an ellipse"""
    rng = np.random.default_rng(seed)
    while True:
        angles = np.sort(rng.uniform(0.0, 2 * math.pi, n))
        gaps = np.diff(np.append(angles, angles[0] + 2 * math.pi))
        if gaps.min() > 0.15:
            break
    return [complex(2.0 * math.cos(a), math.sin(a)) for a in angles]


def random_walk_polygon(seed: int, n: int):
    """Random simple polygon closed from a random walk; rejects until it normalizes"""
    rng = np.random.default_rng(seed)
    while True:
        steps = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        vertices = np.concatenate([[0j], np.cumsum(steps)])
        vertices = np.round(vertices.real, 4) + 1j * np.round(vertices.imag, 4)
        try:
            return normalize([complex(v) for v in vertices])
        except InvalidPolygonError:
            continue


def random_partition(seed: int, n: int, min_width: float = 0.2) -> np.ndarray:
    """0 = t_0 < ... < t_n = 2 pi with every arc at least min_width"""
    rng = np.random.default_rng(seed)
    widths = min_width + rng.dirichlet(np.ones(n)) * (2 * math.pi - n * min_width)
    t = np.concatenate([[0.0], np.cumsum(widths)])
    t[0], t[-1] = 0.0, 2 * math.pi
    return t


@pytest.fixture(autouse=True)
def quiet_runtime():
    """Default configuration and a console-only logger for every test"""
    load_config(None)
    configure_logger(log_dir=None, console_level="ERROR")
    yield


@pytest.fixture
def triangle():
    return normalize(TRIANGLE)


@pytest.fixture
def square():
    return normalize(SQUARE)


@pytest.fixture
def l_shape():
    return normalize(L_SHAPE)


@pytest.fixture
def dart():
    return normalize(DART)


@pytest.fixture
def comb():
    return normalize(COMB)


@pytest.fixture
def spiral():
    return normalize(SPIRAL)
