"""
Pole sums on the unit circle - representation of h' and g'
Builds the numerator polynomial, locates its zeros and bounds their errors
"""
import math
import sys
from dataclasses import dataclass, fields
from typing import Optional, Sequence

import numpy as np

from core.errors import (
    AtPoleError,
    CoincidentPolesError,
    InvalidPartitionError,
    RootsNotConvergedError,
)
from utils.config import Config, get_config
from utils.logger import get_logger

EPS = sys.float_info.epsilon
TWO_PI = 2.0 * math.pi
AT_POLE_TOLERANCE = 1e-15
UNIT_MODULUS_TOLERANCE = 1e-14
POLE_TOLERANCE = 1e-14
RESIDUE_SUM_TOLERANCE = 1e-13


def _frozen(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RootOptions:
    """Tolerances and limits for find_roots"""
    residual_tolerance: float = 1e-13
    degree_tolerance: float = 1e-12
    max_sweeps: int = 200
    polish_steps: int = 20
    seed_grid: int = 4

    @classmethod
    def from_config(cls, config: Optional[Config] = None, **overrides) -> "RootOptions":
        config = config or get_config()
        values = {f.name: config.get(f"roots.{f.name}", f.default) for f in fields(cls)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True, eq=False)
class PoleSum:
    """
    h'(z) = sum_k residues[k] / (z - poles[k])

    Poles lie on the unit circle and are pairwise distinct; residues sum to zero.
    """
    poles: np.ndarray
    residues: np.ndarray

    def __post_init__(self):
        poles = _frozen(self.poles)
        residues = _frozen(self.residues)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "residues", residues)

        if poles.shape != residues.shape or poles.size < 2:
            raise InvalidPartitionError("a pole sum needs matching poles and residues, at least two")
        off = np.abs(np.abs(poles) - 1.0)
        if off.max() > UNIT_MODULUS_TOLERANCE:
            raise InvalidPartitionError(
                "poles must lie on the unit circle",
                {"max_modulus_error": float(off.max())},
            )
        gaps = np.abs(poles[:, None] - poles[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() <= POLE_TOLERANCE:
            i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
            raise CoincidentPolesError(
                f"poles {min(i, j)} and {max(i, j)} coincide",
                {"poles": [int(min(i, j)), int(max(i, j))]},
            )
        total = abs(residues.sum())
        if total > RESIDUE_SUM_TOLERANCE * np.abs(residues).sum():
            raise InvalidPartitionError("residues must sum to zero", {"residue_sum": float(total)})

    @property
    def n(self) -> int:
        return int(self.poles.size)


@dataclass(frozen=True, eq=False)
class CertifiedRoots:
    """Finite zeros of a pole sum with inclusion radii"""
    roots: np.ndarray
    error_radii: np.ndarray
    degree: int
    expected_degree: int
    residuals: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "roots", _frozen(self.roots))
        object.__setattr__(self, "error_radii", _frozen(self.error_radii, float))
        object.__setattr__(self, "residuals", _frozen(self.residuals, float))

    def __len__(self):
        return int(self.roots.size)

    @property
    def degenerate(self) -> bool:
        """Numerator degree dropped below n - 2"""
        return self.degree < self.expected_degree

    @property
    def exterior_margin(self) -> float:
        """min(|root| - radius) - 1, +inf when there are no finite zeros"""
        if self.roots.size == 0:
            return math.inf
        return float(np.min(np.abs(self.roots) - self.error_radii) - 1.0)


def from_step_map(vertices: Sequence[complex], angles: Sequence[float]) -> PoleSum:
    """
    Pole sum of the harmonic extension of a step function

    Vertex k owns the arc (angles[k], angles[k+1]). The pole between arcs k
    and k+1 sits at e^{i angles[k+1]} with residue (c_k - c_{k+1}) / (2 pi i),
    so the last pole is 1 when the partition ends at 2 pi.
    """
    c = np.asarray(vertices, dtype=complex).reshape(-1)
    t = np.asarray(angles, dtype=float).reshape(-1)
    n = c.size
    if t.size != n + 1:
        raise InvalidPartitionError(
            f"{n} vertices need {n + 1} partition angles, got {t.size}")
    if not np.all(np.isfinite(t)):
        raise InvalidPartitionError("partition angles must be finite")
    widths = np.diff(t)
    if np.any(widths < 0):
        raise InvalidPartitionError("partition angles must increase")
    if np.any(widths <= POLE_TOLERANCE):
        k = int(np.argmin(widths))
        raise CoincidentPolesError(
            f"angles {k} and {k + 1} coincide",
            {"angles": [k, k + 1]},
        )
    if t[-1] - t[0] > TWO_PI + 1e-12:
        raise InvalidPartitionError("partition spans more than a full turn")

    poles = np.exp(1j * t[1:])
    if t[-1] == TWO_PI:
        poles[-1] = 1.0
    residues = (c - np.roll(c, -1)) / (TWO_PI * 1j)
    return PoleSum(poles, residues)


def numerator(ps: PoleSum) -> np.ndarray:
    """
    Coefficients (highest degree first) of P(z) = sum_k a_k prod_{j != k} (z - zeta_j)

    The z^{n-1} coefficient is the residue sum, identically zero, and is
    dropped; the result has n - 1 entries (nominal degree n - 2).
    """
    n = ps.n
    coeffs = np.zeros(n, dtype=complex)
    for k in range(n):
        coeffs += ps.residues[k] * np.poly(np.delete(ps.poles, k))
    return coeffs[1:]


def effective_degree(coeffs: np.ndarray, tol: float = 1e-12) -> int:
    """Degree after discarding leading coefficients below tol relative to the largest"""
    coeffs = np.asarray(coeffs)
    scale = np.abs(coeffs).max() if coeffs.size else 0.0
    if scale == 0.0:
        return -1
    significant = np.nonzero(np.abs(coeffs) > tol * scale)[0]
    return int(coeffs.size - 1 - significant[0])


def evaluate(ps: PoleSum, z):
    """Direct summation of the pole sum at z (scalar or array)"""
    z_arr = np.asarray(z, dtype=complex)
    diff = z_arr[..., None] - ps.poles
    if diff.size and np.abs(diff).min() <= AT_POLE_TOLERANCE:
        raise AtPoleError("evaluation point coincides with a pole")
    value = np.sum(ps.residues / diff, axis=-1)
    return complex(value) if np.ndim(z) == 0 else value


def evaluate_derivative(ps: PoleSum, z):
    """Derivative of the pole sum at z"""
    z_arr = np.asarray(z, dtype=complex)
    diff = z_arr[..., None] - ps.poles
    if diff.size and np.abs(diff).min() <= AT_POLE_TOLERANCE:
        raise AtPoleError("evaluation point coincides with a pole")
    value = -np.sum(ps.residues / diff ** 2, axis=-1)
    return complex(value) if np.ndim(z) == 0 else value


def conjugate_residues(ps: PoleSum) -> PoleSum:
    """g' = -sum conj(a_k) / (z - zeta_k), same poles as h'"""
    return PoleSum(ps.poles, -np.conj(ps.residues))


# Root finding --------------------------------------------------------------

def _poly_residual(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """|P(z)| relative to the Horner rounding scale sum |c_i| |z|^i"""
    value = np.abs(np.polyval(coeffs, z))
    scale = np.polyval(np.abs(coeffs), np.abs(z))
    return value / np.where(scale > 0, scale, 1.0)


def _pole_residual(ps: PoleSum, z: np.ndarray) -> np.ndarray:
    """|h'(z)| relative to sum |a_k / (z - zeta_k)|"""
    terms = ps.residues / (z[..., None] - ps.poles)
    scale = np.abs(terms).sum(axis=-1)
    return np.abs(terms.sum(axis=-1)) / np.where(scale > 0, scale, 1.0)


def _residuals(ps: PoleSum, coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        res = np.minimum(_poly_residual(coeffs, z), _pole_residual(ps, z))
    return np.where(np.isfinite(res), res, np.inf)


def _start_circle(coeffs: np.ndarray, degree: int, attempt: int, grid: int) -> np.ndarray:
    lead, const = abs(coeffs[0]), abs(coeffs[-1])
    cauchy = 1.0 + np.abs(coeffs[1:] / coeffs[0]).max()
    mean = (const / lead) ** (1.0 / degree) if const > 0 else 1.0
    radius = (mean, cauchy, 0.5 * mean)[attempt % 3]
    offset = 0.4 + TWO_PI * attempt / (max(grid, 1) * degree)
    k = np.arange(degree)
    return radius * np.exp(1j * (TWO_PI * k / degree + offset))


def _prepare_seeds(seeds, start: np.ndarray) -> np.ndarray:
    """Pad or truncate seeds to the degree; repeated seeds are nudged apart"""
    z = np.array(start, dtype=complex)
    given = np.asarray(list(seeds), dtype=complex)[: z.size]
    z[: given.size] = given
    for i in range(z.size):
        for j in range(i):
            if abs(z[i] - z[j]) <= 1e-12 * max(1.0, abs(z[j])):
                z[i] = z[i] + 1e-7 * max(1.0, abs(z[i])) * np.exp(1j * (i + 0.5))
    return z


def _aberth(coeffs: np.ndarray, z: np.ndarray, max_sweeps: int, tol: float) -> np.ndarray:
    """Aberth-Ehrlich iteration with in-place (Gauss-Seidel) updates"""
    z = z.copy()
    deriv = np.polyder(coeffs)
    d = z.size
    for _ in range(max_sweeps):
        converged = True
        for i in range(d):
            zi = z[i]
            pv = np.polyval(coeffs, zi)
            dpv = np.polyval(deriv, zi)
            others = np.delete(z, i)
            with np.errstate(divide="ignore", invalid="ignore"):
                correction = np.sum(1.0 / (zi - others)) if d > 1 else 0.0
                delta = pv / (dpv - pv * correction)
            if not np.isfinite(delta):
                continue
            z[i] = zi - delta
            if abs(delta) > tol * max(1.0, abs(z[i])):
                converged = False
        if converged:
            break
    return z


def _polish(ps: PoleSum, z: np.ndarray, steps: int) -> np.ndarray:
    """Newton steps on the pole-sum form, accepted only when |h'| decreases"""
    z = z.copy()
    for i in range(z.size):
        others = np.delete(z, i)
        for _ in range(steps):
            try:
                value = evaluate(ps, z[i])
                slope = evaluate_derivative(ps, z[i])
            except AtPoleError:
                break
            if value == 0 or slope == 0:
                break
            step = value / slope
            if others.size and abs(step) >= 0.5 * np.abs(z[i] - others).min():
                break
            candidate = z[i] - step
            try:
                if abs(evaluate(ps, candidate)) >= abs(value):
                    break
            except AtPoleError:
                break
            z[i] = candidate
            if abs(step) <= 4 * EPS * abs(candidate):
                break
    return z


def _error_radii(ps: PoleSum, coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """
    Inclusion radii: every zero of P lies within radius of some root

    Simple radius d |P/P'| computed as h' / (h'' + h' sum 1/(r - zeta)). When
    those disks overlap, Gershgorin radii d |W_i| of diag(r) - W 1^T, whose
    eigenvalues are the zeros of P, are used as well.
    """
    d = roots.size
    n = ps.n
    diff = roots[:, None] - ps.poles
    terms = ps.residues / diff
    h1 = terms.sum(axis=1)
    h1_err = 4.0 * n * EPS * np.abs(terms).sum(axis=1)
    h2 = -np.sum(ps.residues / diff ** 2, axis=1)
    log_deriv = np.sum(1.0 / diff, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        simple = d * (np.abs(h1) + h1_err) / np.abs(h2 + h1 * log_deriv)
    simple = np.where(np.isfinite(simple), simple, np.inf) + 4.0 * EPS * np.abs(roots)

    if d == 1:
        return simple
    gaps = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(gaps, np.inf)
    overlap = (gaps <= simple[:, None] + simple[None, :]).any(axis=1)
    if not overlap.any():
        return simple

    q_at = np.prod(diff, axis=1)
    p_at = np.abs(q_at) * (np.abs(h1) + h1_err)
    spread = roots[:, None] - roots[None, :]
    np.fill_diagonal(spread, 1.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        weierstrass = p_at / (abs(coeffs[0]) * np.abs(np.prod(spread, axis=1)))
    gershgorin = d * np.where(np.isfinite(weierstrass), weierstrass, np.inf)
    return np.maximum(simple, gershgorin)


def find_roots(ps: PoleSum, seeds: Optional[Sequence[complex]] = None,
               options: Optional[RootOptions] = None) -> CertifiedRoots:
    """
    All finite zeros of the pole sum with inclusion radii

    Args:
        ps: pole sum with n >= 3 poles
        seeds: optional starting points (e.g. roots of a nearby pole sum)
        options: tolerances; defaults come from the `roots` config section

    Returns:
        CertifiedRoots; empty when the numerator is constant

    Raises:
        RootsNotConvergedError: no start reached the residual tolerance
    """
    options = options or RootOptions.from_config()
    expected = max(ps.n - 2, 0)
    full = numerator(ps)
    degree = effective_degree(full, options.degree_tolerance)
    if degree <= 0:
        empty = np.zeros(0)
        return CertifiedRoots(empty, empty, max(degree, 0), expected, empty)
    coeffs = full[full.size - degree - 1:]
    if degree < expected:
        get_logger().debug(f"numerator degree {degree} below nominal {expected}")

    starts = []
    if seeds is not None and len(seeds):
        starts.append(("seeded", _prepare_seeds(seeds, _start_circle(coeffs, degree, 0, options.seed_grid))))
    for attempt in range(max(options.seed_grid, 1)):
        starts.append((f"circle {attempt}", _start_circle(coeffs, degree, attempt, options.seed_grid)))

    best = None
    for label, start in starts:
        roots = _aberth(coeffs, start, options.max_sweeps, 1e-14)
        roots = _polish(ps, roots, options.polish_steps)
        residuals = _residuals(ps, coeffs, roots)
        if best is None or residuals.max() < best[1].max():
            best = (roots, residuals)
        if residuals.max() <= options.residual_tolerance:
            break
        get_logger().warning(
            f"root start '{label}' stopped at relative residual {residuals.max():.3e}, restarting")
    else:
        raise RootsNotConvergedError(
            f"no start reached relative residual {options.residual_tolerance:g}",
            {"best_residuals": [float(r) for r in best[1]]},
        )

    radii = _error_radii(ps, coeffs, roots)
    order = np.lexsort((roots.imag, roots.real))
    return CertifiedRoots(roots[order], radii[order], degree, expected, residuals[order])
