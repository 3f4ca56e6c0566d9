"""
Univalence verification of a step map
The zero criterion decides; winding, Jacobian and collision sampling cross-check it
"""
import math
from dataclasses import asdict, dataclass, fields
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from core.pole_sum import RootOptions, find_roots
from core.poisson import StepMap, evaluate_map, jacobian
from core.polygon import interior_points
from utils.config import Config, get_config
from utils.logger import get_logger

TWO_PI = 2.0 * math.pi
MIN_BOUNDARY_GAP = 1e-13


@dataclass(frozen=True)
class VerificationOptions:
    """Sampling densities and tolerances of the redundant checks"""
    boundary_samples: int = 8192
    boundary_gap: float = 1e-4
    interior_count: int = 16
    grid_radii: int = 64
    grid_angles: int = 256
    grid_gap: float = 1e-4
    collision_radii: int = 24
    collision_angles: int = 64
    collision_tol: float = 1e-9
    collision_reach: float = 0.9
    separation_tol: float = 1e-2
    winding_tol: float = 1e-3

    @classmethod
    def from_config(cls, config: Optional[Config] = None, **overrides) -> "VerificationOptions":
        config = config or get_config()
        values = {f.name: config.get(f"verification.{f.name}", f.default) for f in fields(cls)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verify; passed combines the four checks"""
    zero_margin: float
    root_count: int
    winding_ok: bool
    winding_radius: float
    winding_numbers: List[float]
    jacobian_min: float
    jacobian_grid: List[int]
    collision_free: bool
    collision_samples: int
    collisions: int
    boundary_trace_deviation: float

    @property
    def passed(self) -> bool:
        return (self.zero_margin > 0 and self.winding_ok
                and self.jacobian_min > 0 and self.collision_free)

    def to_dict(self) -> dict:
        data = asdict(self)
        if math.isinf(self.zero_margin):
            data["zero_margin"] = None
        data["passed"] = self.passed
        return data


def winding_radius(m: StepMap, boundary_gap: float) -> float:
    """Sampling radius for the boundary curve, pulled in further for narrow arcs"""
    gap = min(boundary_gap, 1e-4 * float(m.arc_widths().min()))
    return 1.0 - max(gap, MIN_BOUNDARY_GAP)


def winding_numbers(curve: np.ndarray, points) -> np.ndarray:
    """Winding number of a closed sampled curve about each test point"""
    closed = np.append(curve, curve[0])
    result = []
    for q in points:
        d = closed - q
        result.append(np.angle(d[1:] / d[:-1]).sum() / TWO_PI)
    return np.array(result)


def _boundary_angles(m: StepMap, samples: int) -> np.ndarray:
    uniform = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    return np.unique(np.concatenate([uniform, m.arc_midpoints()]))


def _grid_triangles(rings: int, spokes: int) -> np.ndarray:
    """Counter-clockwise triangles of a polar grid; vertex 0 is the centre"""
    def index(i, j):
        return 1 + i * spokes + j % spokes

    triangles = [(0, index(0, j), index(0, j + 1)) for j in range(spokes)]
    for i in range(rings - 1):
        for j in range(spokes):
            a, b = index(i, j), index(i, j + 1)
            c, d = index(i + 1, j), index(i + 1, j + 1)
            triangles += [(a, c, d), (a, d, b)]
    return np.array(triangles, dtype=int)


def _collision_count(m: StepMap, options: VerificationOptions) -> Tuple[int, int]:
    """
    Grid points whose image falls strictly inside the image of a distant grid triangle

    Triangles with a vertex within two grid steps of the point are skipped,
    so only overlaps between separate sheets of the image count.
    """
    rings, spokes = options.collision_radii, options.collision_angles
    radii = np.linspace(0.0, options.collision_reach, rings + 1)[1:]
    angles = np.linspace(0.0, TWO_PI, spokes, endpoint=False)
    pre = np.concatenate([[0j], (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()])
    image = evaluate_map(m, pre)

    triangles = _grid_triangles(rings, spokes)
    corners = image[triangles]
    area = np.imag(np.conj(corners[:, 1] - corners[:, 0]) * (corners[:, 2] - corners[:, 0]))
    live = area != 0
    centroids = corners.mean(axis=1)
    extent = float(np.abs(corners - centroids[:, None]).max())
    step = max(radii[0], options.collision_reach * TWO_PI / spokes)
    near = max(options.separation_tol, 2.0 * step)

    tree = cKDTree(np.column_stack([centroids.real, centroids.imag]))
    candidates = tree.query_ball_point(np.column_stack([image.real, image.imag]), r=extent)
    collisions = 0
    for p, found in enumerate(candidates):
        if not found:
            continue
        found = np.asarray(found, dtype=int)
        found = found[live[found]]
        found = found[np.abs(pre[triangles[found]] - pre[p]).min(axis=1) > near]
        if not found.size:
            continue
        a, b, c = (corners[found, k] for k in range(3))
        q = image[p]
        # barycentric weights, normalized by the signed area
        wa = np.imag(np.conj(b - q) * (c - q)) / area[found]
        wb = np.imag(np.conj(c - q) * (a - q)) / area[found]
        wc = 1.0 - wa - wb
        inside = np.minimum(np.minimum(wa, wb), wc) > options.collision_tol
        collisions += int(np.count_nonzero(inside))
    return collisions, int(pre.size)


def verify(m: StepMap, options: Optional[VerificationOptions] = None,
           root_options: Optional[RootOptions] = None) -> VerificationReport:
    """
    Check a step map for univalence from scratch

    Args:
        m: step map to check
        options: sampling settings, defaults from the `verification` config section
        root_options: root finder settings

    Returns:
        VerificationReport; a failing map is a report outcome, not an error
    """
    options = options or VerificationOptions.from_config()
    logger = get_logger()

    roots = find_roots(m.h_prime(), options=root_options)
    zero_margin = roots.exterior_margin
    if not zero_margin > 0:
        logger.warning(f"zero criterion failed: exterior margin {zero_margin:.3e}")

    radius = winding_radius(m, options.boundary_gap)
    curve = evaluate_map(m, radius * np.exp(1j * _boundary_angles(m, options.boundary_samples)))
    points = interior_points(m.polygon, options.interior_count)
    winding = winding_numbers(curve, points)
    winding_ok = bool(np.all(np.abs(winding - 1.0) <= options.winding_tol))
    if not winding_ok:
        logger.warning(f"winding check failed: {np.round(winding, 6).tolist()}")

    mids = evaluate_map(m, radius * np.exp(1j * m.arc_midpoints()))
    deviation = float(np.abs(mids - m.vertices).max())

    radii = np.linspace(0.0, 1.0 - options.grid_gap, options.grid_radii)
    angles = np.linspace(0.0, TWO_PI, options.grid_angles, endpoint=False)
    grid = radii[:, None] * np.exp(1j * angles)[None, :]
    jacobian_min = float(np.min(jacobian(m, grid)))
    if not jacobian_min > 0:
        logger.warning(f"Jacobian check failed: minimum {jacobian_min:.3e}")

    collisions, samples = _collision_count(m, options)
    if collisions:
        logger.warning(f"collision check failed: {collisions} pair(s)")

    report = VerificationReport(
        zero_margin=zero_margin,
        root_count=len(roots),
        winding_ok=winding_ok,
        winding_radius=radius,
        winding_numbers=[float(w) for w in winding],
        jacobian_min=jacobian_min,
        jacobian_grid=[options.grid_radii, options.grid_angles],
        collision_free=collisions == 0,
        collision_samples=samples,
        collisions=collisions,
        boundary_trace_deviation=deviation,
    )
    logger.log_operation("verify", f"n={m.n} margin={zero_margin:.3e} passed={report.passed}",
                         success=report.passed)
    return report
