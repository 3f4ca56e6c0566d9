"""
Poisson extension of step boundary data
Closed-form harmonic measure in the disk and the upper half-plane, the
resulting map f, its Jacobian and dilatation
"""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.errors import (
    InvalidPartitionError,
    NonpositiveLengthError,
    NotUpperHalfPlaneError,
    OutOfDiskError,
)
from core.pole_sum import PoleSum, conjugate_residues, evaluate, from_step_map
from core.polygon import Polygon

TWO_PI = 2.0 * math.pi
DISK_CUTOFF = 1.0 - 1e-14
# raw angle (radians) -> normalized harmonic measure
ANGLE_TO_MEASURE = 1.0 / math.pi


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StepMap:
    """Polygon plus partition 0 = t_0 < ... < t_n = 2 pi; vertex k owns arc (t_k, t_{k+1})"""
    polygon: Polygon
    partition: np.ndarray

    def __post_init__(self):
        t = _frozen(self.partition)
        object.__setattr__(self, "partition", t)
        n = self.polygon.n
        if t.size != n + 1:
            raise InvalidPartitionError(f"{n} vertices need {n + 1} angles, got {t.size}")
        if not np.all(np.isfinite(t)):
            raise InvalidPartitionError("partition angles must be finite")
        if t[0] != 0.0 or t[-1] != TWO_PI:
            raise InvalidPartitionError("partition must start at 0 and end at 2 pi")
        if np.any(np.diff(t) <= 0):
            raise InvalidPartitionError("partition angles must be strictly increasing")

    @property
    def n(self) -> int:
        return self.polygon.n

    @property
    def vertices(self) -> np.ndarray:
        return self.polygon.as_array()

    def arc_widths(self) -> np.ndarray:
        return np.diff(self.partition)

    def arc_midpoints(self) -> np.ndarray:
        t = self.partition
        return 0.5 * (t[:-1] + t[1:])

    def h_prime(self) -> PoleSum:
        return from_step_map(self.polygon.vertices, self.partition)

    def g_prime(self) -> PoleSum:
        return conjugate_residues(self.h_prime())


def equal_partition(n: int) -> np.ndarray:
    """n equal arcs"""
    t = np.linspace(0.0, TWO_PI, n + 1)
    t[0], t[-1] = 0.0, TWO_PI
    return t


@dataclass(frozen=True, eq=False)
class HalfPlaneStepMap:
    """
    Step data on the real line

    Vertex k (k < n - 1) takes the interval [x_k, x_{k+1}]; the last vertex
    takes the unbounded complement.
    """
    abscissas: np.ndarray
    vertices: np.ndarray

    def __post_init__(self):
        x = _frozen(self.abscissas)
        c = _frozen(self.vertices, complex)
        object.__setattr__(self, "abscissas", x)
        object.__setattr__(self, "vertices", c)
        if x.size != c.size or x.size < 2:
            raise InvalidPartitionError("need as many abscissas as vertices, at least two")
        if not np.all(np.isfinite(x)) or np.any(np.diff(x) <= 0):
            raise InvalidPartitionError("abscissas must be finite and strictly increasing")

    @property
    def n(self) -> int:
        return int(self.abscissas.size)


def _check_disk(z: np.ndarray):
    if z.size and np.abs(z).max() >= DISK_CUTOFF:
        raise OutOfDiskError("evaluation point too close to or outside the unit circle",
                             {"max_modulus": float(np.abs(z).max())})


def _lifted_measure(z: np.ndarray, theta_a: float, theta_b: float) -> np.ndarray:
    delta = theta_b - theta_a
    angle = np.angle((np.exp(1j * theta_b) - z) / (np.exp(1j * theta_a) - z))
    # the subtended angle lies in (delta/2, pi + delta/2); any principal value
    # below delta/2 - pi/2 belongs to the upper part of that range
    angle = np.where(angle < 0.5 * delta - 0.5 * math.pi, angle + TWO_PI, angle)
    omega = angle * ANGLE_TO_MEASURE - delta / TWO_PI
    return np.clip(omega, 0.0, 1.0)


def disk_harmonic_measure(z, theta_a: float, theta_b: float):
    """
    Harmonic measure at z of the arc (theta_a, theta_b) of the unit circle

    Args:
        z: point(s) with |z| < 1 - 1e-14
        theta_a, theta_b: arc endpoints with 0 < theta_b - theta_a < 2 pi

    Returns:
        value(s) in [0, 1]
    """
    if not 0.0 < theta_b - theta_a < TWO_PI:
        raise InvalidPartitionError("arc must satisfy 0 < theta_b - theta_a < 2 pi")
    z_arr = np.asarray(z, dtype=complex)
    _check_disk(z_arr)
    omega = _lifted_measure(z_arr, theta_a, theta_b)
    return float(omega) if np.ndim(z) == 0 else omega


def disk_measures(m: StepMap, z) -> np.ndarray:
    """Harmonic measures of all n arcs at z; last axis indexes the vertex"""
    z_arr = np.asarray(z, dtype=complex)
    _check_disk(z_arr)
    t = m.partition
    return np.stack([_lifted_measure(z_arr, t[k], t[k + 1]) for k in range(m.n)], axis=-1)


def evaluate_map(m: StepMap, z):
    """f(z) = sum_k c_k omega_k(z)"""
    value = disk_measures(m, z) @ m.vertices
    return complex(value) if np.ndim(z) == 0 else value


def half_plane_angle(z, a: float, b: float):
    """
    Raw angle (radians, in (0, pi)) subtended by [a, b] at z in the upper half-plane

    Equals arg((z - b) / (z - a)); not divided by pi.
    """
    if not a < b:
        raise NonpositiveLengthError("interval must satisfy a < b", {"a": a, "b": b})
    z_arr = np.asarray(z, dtype=complex)
    if z_arr.size and z_arr.imag.min() <= 0:
        raise NotUpperHalfPlaneError("point must satisfy Im z > 0")
    x, y = z_arr.real, z_arr.imag
    angle = np.arctan2(y * (b - a), (x - a) * (x - b) + y * y)
    return float(angle) if np.ndim(z) == 0 else angle


def half_plane_measures(m: HalfPlaneStepMap, z) -> np.ndarray:
    """Normalized measures of the n intervals; the unbounded one is the complement"""
    x = m.abscissas
    bounded = [np.asarray(half_plane_angle(z, x[k], x[k + 1])) * ANGLE_TO_MEASURE
               for k in range(m.n - 1)]
    bounded = np.stack(bounded, axis=-1)
    tail = 1.0 - bounded.sum(axis=-1, keepdims=True)
    return np.concatenate([bounded, tail], axis=-1)


def half_plane_map(m: HalfPlaneStepMap, z):
    """f(z) = sum_k c_k omega_k(z) in the upper half-plane"""
    value = half_plane_measures(m, z) @ m.vertices
    return complex(value) if np.ndim(z) == 0 else value


def half_plane_from_step_map(m: StepMap) -> Tuple[HalfPlaneStepMap, float]:
    """
    Transport a disk step map to the upper half-plane

    The rotation is the midpoint of the last vertex's arc, which becomes the
    unbounded interval. Use cayley_to_disk with the returned rotation to
    compare evaluations.
    """
    t = m.partition
    rotation = 0.5 * (t[-2] + t[-1])
    phi = t[:-1] - rotation + TWO_PI
    return HalfPlaneStepMap(-1.0 / np.tan(0.5 * phi), m.vertices), float(rotation)


def cayley_to_disk(z, rotation: float = 0.0):
    """w = e^{i rotation} (z - i) / (z + i)"""
    z_arr = np.asarray(z, dtype=complex)
    w = np.exp(1j * rotation) * (z_arr - 1j) / (z_arr + 1j)
    return complex(w) if np.ndim(z) == 0 else w


def jacobian(m: StepMap, z):
    """|h'(z)|^2 - |g'(z)|^2"""
    z_arr = np.asarray(z, dtype=complex)
    _check_disk(z_arr)
    h1 = np.asarray(evaluate(m.h_prime(), z_arr))
    g1 = np.asarray(evaluate(m.g_prime(), z_arr))
    value = np.abs(h1) ** 2 - np.abs(g1) ** 2
    return float(value) if np.ndim(z) == 0 else value


def dilatation(m: StepMap, z):
    """Second complex dilatation g'/h'; |dilatation| < 1 exactly where J > 0"""
    z_arr = np.asarray(z, dtype=complex)
    _check_disk(z_arr)
    h1 = np.asarray(evaluate(m.h_prime(), z_arr))
    g1 = np.asarray(evaluate(m.g_prime(), z_arr))
    with np.errstate(divide="ignore", invalid="ignore"):
        value = g1 / h1
    return complex(value) if np.ndim(z) == 0 else value
