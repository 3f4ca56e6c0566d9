"""
Boundary asymptotics of half-plane harmonic measure
omega here is always the RAW subtended angle in radians, not angle / pi
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core.errors import (
    IndexAdjacentError,
    IndexRangeError,
    NonpositiveLengthError,
    NotUpperHalfPlaneError,
)
from core.poisson import half_plane_angle


@dataclass(frozen=True, eq=False)
class IntervalLayout:
    """
    Abscissas x_0 < ... < x_{n-1} on the real axis

    Interval j (j < n - 1) is [x_j, x_{j+1}] with length lengths[j]; interval
    n - 1 is the unbounded complement containing infinity.
    """
    abscissas: np.ndarray

    def __post_init__(self):
        x = np.array(self.abscissas, dtype=float).reshape(-1)
        x.setflags(write=False)
        object.__setattr__(self, "abscissas", x)
        if x.size < 2 or not np.all(np.isfinite(x)):
            raise NonpositiveLengthError("a layout needs at least two finite abscissas")
        if np.any(np.diff(x) <= 0):
            raise NonpositiveLengthError("interval lengths must be positive")

    @classmethod
    def from_lengths(cls, lengths: Sequence[float], start: float = 0.0) -> "IntervalLayout":
        lengths = np.asarray(lengths, dtype=float)
        return cls(np.concatenate([[start], start + np.cumsum(lengths)]))

    @property
    def n(self) -> int:
        return int(self.abscissas.size)

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.abscissas)


def _check_positive(**values):
    for name, value in values.items():
        if not value > 0:
            raise NonpositiveLengthError(f"{name} must be positive, got {value}", {name: value})


def los_limit(A: float, B: float) -> float:
    """Limit of omega / y at x_0 for the interval [x_0 + A, x_0 + A + B]: B / (A^2 + AB)"""
    _check_positive(A=A, B=B)
    return B / (A * A + A * B)


def approach_point(y: float, approach_angle: float, x0: float = 0.0) -> complex:
    """Point at height y on the ray leaving x0 at approach_angle"""
    if not 0.0 < approach_angle < math.pi:
        raise ValueError("approach angle must lie strictly between 0 and pi")
    if not y > 0:
        raise NotUpperHalfPlaneError("y must be positive")
    return complex(x0 + y / math.tan(approach_angle), y)


def los_empirical(A: float, B: float, approach_angle: float, y: float) -> float:
    """omega(z) / y for z on the ray from x_0 = 0; omega is the raw angle of [A, A + B]"""
    _check_positive(A=A, B=B)
    z = approach_point(y, approach_angle)
    if z.real >= A:
        raise ValueError("approach point has passed x_1; use a smaller y")
    return half_plane_angle(z, A, A + B) / y


def extrapolate_to_zero(ys: Sequence[float], values: Sequence[float]) -> float:
    """Neville extrapolation of a sampled function of y to y = 0"""
    ys = [float(y) for y in ys]
    table = [float(v) for v in values]
    if len(ys) != len(table) or not ys:
        raise ValueError("need matching, non-empty sample lists")
    for level in range(1, len(ys)):
        for i in range(len(ys) - level):
            y_lo, y_hi = ys[i], ys[i + level]
            table[i] = (y_lo * table[i + 1] - y_hi * table[i]) / (y_lo - y_hi)
    return table[0]


def los_extrapolated(A: float, B: float, approach_angle: float,
                     ys: Sequence[float] = (1e-3, 1e-4, 1e-5)) -> float:
    """los_empirical extrapolated to y = 0 (Richardson-style)"""
    return extrapolate_to_zero(ys, [los_empirical(A, B, approach_angle, y) for y in ys])


def _check_indices(layout: IntervalLayout, m: int, k: int):
    n = layout.n
    if not (0 <= m < n and 0 <= k < n):
        raise IndexRangeError(f"indices must lie in [0, {n - 1}]", {"m": m, "k": k})
    if k == m or k == (m - 1) % n:
        raise IndexAdjacentError(f"interval {k} touches the approach point x_{m}", {"m": m, "k": k})


def omega_ratio_approx(layout: IntervalLayout, m: int, k: int, two_sided: bool = False) -> float:
    """
    Approximate omega_k(z) / y as z approaches x_m

    Bounded intervals use the law-of-sines limit with A the gap between x_m
    and the interval (mirrored when k < m). The unbounded interval (k = n - 1)
    counts its right tail only unless two_sided, which adds the left tail.
    """
    _check_indices(layout, m, k)
    x = layout.abscissas
    n = layout.n
    if k == n - 1:
        ratio = 1.0 / (x[n - 1] - x[m])
        if two_sided:
            ratio += 1.0 / (x[m] - x[0])
        return ratio
    B = x[k + 1] - x[k]
    A = x[k] - x[m] if k > m else x[m] - x[k + 1]
    return los_limit(A, B)


def tail_angle(z: complex, left: float, right: float, two_sided: bool = False) -> float:
    """Raw angle of [right, +inf) at z, plus that of (-inf, left] when two_sided"""
    if not z.imag > 0:
        raise NotUpperHalfPlaneError("point must satisfy Im z > 0")
    angle = math.atan2(z.imag, right - z.real)
    if two_sided:
        angle += math.atan2(z.imag, z.real - left)
    return angle


def omega_ratio_empirical(layout: IntervalLayout, m: int, k: int, y: float,
                          two_sided: bool = False) -> float:
    """Direct omega_k(x_m + iy) / y, the oracle for omega_ratio_approx"""
    _check_indices(layout, m, k)
    x = layout.abscissas
    z = complex(x[m], y)
    if k == layout.n - 1:
        return tail_angle(z, x[0], x[-1], two_sided) / y
    return half_plane_angle(z, x[k], x[k + 1]) / y
