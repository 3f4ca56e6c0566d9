"""
Mapper - inductive construction of a univalent step map for a Jordan polygon
Clips ears down to a triangle, then re-inserts them one at a time, shrinking
the new arc until every zero of h' is certified outside the closed unit disk
"""
import math
from dataclasses import dataclass, fields, replace
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from core import certify
from core.errors import (
    AtPoleError,
    CoincidentPolesError,
    EarChainExhaustedError,
    EpsilonExhaustedError,
    NotCertifiedError,
    NotOutsideCornerError,
)
from core.pole_sum import (
    CertifiedRoots,
    RootOptions,
    find_roots,
    from_step_map,
)
from core.poisson import StepMap, equal_partition
from core.polygon import Polygon, clip_creates_collinear, clip_ear, find_ears
from core.predicates import orient
from utils.config import Config, get_config
from utils.logger import get_logger

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SolverOptions:
    """Limits of the epsilon search"""
    eps0: float = 0.5
    min_margin: float = 1e-9
    max_halvings: int = 60
    continuation_radius: float = 0.25
    min_epsilon: float = 1e-12
    max_backtracks: int = 8

    @classmethod
    def from_config(cls, config: Optional[Config] = None, **overrides) -> "SolverOptions":
        config = config or get_config()
        values = {f.name: config.get(f"solver.{f.name}", f.default) for f in fields(cls)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class EarStep:
    """
    One ear insertion

    ear_index is the ear's position in the polygon it was clipped from;
    relabel_offset is the cyclic shift applied to the clipped polygon's
    solution so that the ear's successor becomes vertex 0.
    """
    ear_index: int
    w0: complex
    epsilon: float
    relabel_offset: int
    halvings: int
    margin: float
    tracked_root: Optional[complex] = None

    def to_dict(self) -> dict:
        return {
            "ear_index": self.ear_index,
            "epsilon": self.epsilon,
            "w0": [self.w0.real, self.w0.imag],
            "relabel_offset": self.relabel_offset,
            "halvings": self.halvings,
            "margin": None if math.isinf(self.margin) else self.margin,
        }


@dataclass(frozen=True, eq=False)
class Certificate:
    """Certified step map; vertex_offset is the input index of the output's vertex 0"""
    step_map: StepMap
    roots: CertifiedRoots
    ear_trace: Tuple[EarStep, ...]
    vertex_offset: int = 0
    checks: Optional[certify.VerificationReport] = None

    @property
    def exterior_margin(self) -> float:
        return self.roots.exterior_margin


def ear_limit_point(vertices: Sequence[complex]) -> complex:
    """w0 = -i (c_ear - c_0) / (c_{n-1} - c_0) for a vertex list with the ear last"""
    c_first, c_before, c_ear = complex(vertices[0]), complex(vertices[-2]), complex(vertices[-1])
    return -1j * (c_ear - c_first) / (c_before - c_first)


def ear_partition(t: Sequence[float], epsilon: float) -> np.ndarray:
    """tau = (t_0, ..., t_{n-1}, 2 pi - epsilon, 2 pi)"""
    t = np.asarray(t, dtype=float)
    return np.concatenate([t[:-1], [TWO_PI - epsilon, TWO_PI]])


def _one_minus_unit(theta: np.ndarray) -> np.ndarray:
    """1 - e^{i theta} without cancellation for theta near a multiple of 2 pi"""
    theta = np.remainder(theta + math.pi, TWO_PI) - math.pi
    return -2j * np.sin(0.5 * theta) * np.exp(0.5j * theta)


def renormalized_residual(vertices: Sequence[complex], tau: Sequence[float], epsilon: float, w):
    """
    epsilon * h'_epsilon(1 + epsilon w), summed directly in the w variable

    Each pole xi_k appears at w = -(1 - xi_k) / epsilon.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    ps = from_step_map(vertices, tau)
    shifts = _one_minus_unit(np.asarray(tau, dtype=float)[1:]) / epsilon
    w_arr = np.asarray(w, dtype=complex)
    denom = w_arr[..., None] + shifts
    if denom.size and np.abs(denom).min() <= 1e-15 * max(1.0, float(np.abs(w_arr).max())):
        raise AtPoleError("w coincides with a shifted pole")
    value = np.sum(ps.residues / denom, axis=-1)
    return complex(value) if np.ndim(w) == 0 else value


def _is_outside_corner(vertices: Sequence[complex]) -> bool:
    return orient(complex(vertices[0]), complex(vertices[-2]), complex(vertices[-1])) > 0


def _continuation_ok(old: np.ndarray, new: np.ndarray, radius: float) -> bool:
    if old.size == 0:
        return True
    if new.size == 0:
        return False
    distance = np.abs(old[:, None] - new[None, :]).min(axis=1)
    return bool(np.all(distance < radius * np.maximum(1.0, np.abs(old))))


def insert_ear(t: Sequence[float], vertices: Sequence[complex],
               options: Optional[SolverOptions] = None,
               previous: Optional[CertifiedRoots] = None,
               root_options: Optional[RootOptions] = None
               ) -> Tuple[np.ndarray, CertifiedRoots, EarStep]:
    """
    Insert the ear (last vertex) into a certified partition of the other vertices

    Args:
        t: partition of the clipped polygon vertices[:-1], ending at 2 pi
        vertices: c_0..c_n with the ear last, between c_{n-1} and c_0
        options: epsilon-search limits
        previous: certified roots for t (computed when omitted)
        root_options: root finder settings

    Returns:
        (tau, roots, step); step.relabel_offset is left at 0 for the caller

    Raises:
        NotOutsideCornerError: the ear is not a convex corner
        EpsilonExhaustedError: no epsilon down to the halving cap was certified
    """
    options = options or SolverOptions.from_config()
    root_options = root_options or RootOptions.from_config()
    logger = get_logger()
    t = np.asarray(t, dtype=float)
    vertices = [complex(v) for v in vertices]
    n = len(vertices) - 1

    if not _is_outside_corner(vertices):
        raise NotOutsideCornerError(
            "ear is not an outside corner of its neighbours",
            {"vertices": n + 1},
        )
    if previous is None:
        previous = find_roots(from_step_map(vertices[:-1], t), options=root_options)

    w0 = ear_limit_point(vertices)
    old_roots = np.asarray(previous.roots)
    epsilon = min(options.eps0, 0.5 * (t[-1] - t[-2]))
    best_margin = -math.inf
    halvings = 0
    tried = epsilon

    for halvings in range(options.max_halvings + 1):
        if epsilon < options.min_epsilon:
            break
        tried = epsilon
        tau = ear_partition(t, epsilon)
        seed = 1.0 + epsilon * w0
        try:
            roots = find_roots(from_step_map(vertices, tau),
                               seeds=list(old_roots) + [seed], options=root_options)
        except CoincidentPolesError:
            break
        except NotCertifiedError as e:
            logger.debug(f"insert_ear n={n + 1} eps={epsilon:.3e} {e}")
            epsilon *= 0.5
            continue
        margin = roots.exterior_margin
        continued = _continuation_ok(old_roots, roots.roots, options.continuation_radius)
        logger.debug(
            f"insert_ear n={n + 1} eps={epsilon:.3e} margin={margin:.3e} continued={continued}")

        if margin > options.min_margin and continued:
            tracked = None
            if len(roots):
                tracked = complex(roots.roots[np.argmin(np.abs(roots.roots - seed))])
            step = EarStep(
                ear_index=n,
                w0=w0,
                epsilon=float(epsilon),
                relabel_offset=0,
                halvings=halvings,
                margin=margin,
                tracked_root=tracked,
            )
            return tau, roots, step

        best_margin = max(best_margin, margin)
        epsilon *= 0.5

    raise EpsilonExhaustedError(
        f"no certified epsilon after {halvings} halvings",
        {"best_margin": None if math.isinf(best_margin) else best_margin,
         "epsilon": tried},
    )


EarBans = Dict[Tuple[complex, ...], Set[int]]


def _clip_chain(p: Polygon, banned: EarBans, dead: Set[Tuple[complex, ...]]
                ) -> Optional[List[Tuple[Polygon, int]]]:
    """
    Ears to clip from p down to a triangle, best ranked first

    Skips banned ears and clips that leave three collinear vertices, falling
    back to the next ear when a clipped polygon has no usable chain.
    None when p has no chain at all.
    """
    if p.n == 3:
        return []
    if p.vertices in dead:
        return None
    skip = banned.get(p.vertices, set())
    for ear in find_ears(p).ranked():
        if ear in skip or clip_creates_collinear(p, ear):
            continue
        rest = _clip_chain(clip_ear(p, ear), banned, dead)
        if rest is not None:
            return [(p, ear)] + rest
    dead.add(p.vertices)
    return None


def _relabel(t: np.ndarray, roots: CertifiedRoots, offset: int) -> Tuple[np.ndarray, CertifiedRoots]:
    """Rotate a solution so vertex `offset` owns the arc starting at angle 0"""
    if offset == 0:
        return t, roots
    widths = np.roll(np.diff(t), -offset)
    rotated = np.concatenate([[0.0], np.cumsum(widths)])
    rotated[-1] = TWO_PI
    turn = np.exp(-1j * t[offset])
    return rotated, CertifiedRoots(
        np.asarray(roots.roots) * turn,
        roots.error_radii,
        roots.degree,
        roots.expected_degree,
        roots.residuals,
    )


def _build(chain: List[Tuple[Polygon, int]], base: Polygon, options: SolverOptions,
           root_options: RootOptions):
    """
    Certify the base triangle and re-insert the chain's ears, innermost first

    Returns (vertices, t, roots, trace, offset). A failure is re-raised with
    details["level"] set to the chain index whose insertion failed.
    """
    logger = get_logger()
    t = equal_partition(3)
    vertices = list(base.vertices)
    try:
        roots = find_roots(from_step_map(vertices, t), options=root_options)
    except NotCertifiedError as e:
        e.details["level"] = len(chain) - 1
        raise
    if not roots.exterior_margin > options.min_margin:
        raise NotCertifiedError(
            "base triangle has a zero of h' inside the closed disk",
            {"margin": roots.exterior_margin, "level": len(chain) - 1},
        )

    trace: List[EarStep] = []
    offset = 0
    for level in range(len(chain) - 1, -1, -1):
        parent, ear = chain[level]
        successor = parent[ear + 1]
        clipped = parent.vertices[:ear] + parent.vertices[ear + 1:]
        # index of the ear's successor in the current labelling of the clipped polygon
        start = clipped.index(vertices[0])
        relabel = (clipped.index(successor) - start) % len(clipped)
        t, roots = _relabel(t, roots, relabel)
        vertices = vertices[relabel:] + vertices[:relabel]

        try:
            t, roots, step = insert_ear(t, vertices + [parent[ear]], options, roots, root_options)
        except NotCertifiedError as e:
            e.details["level"] = level
            raise
        vertices = vertices + [parent[ear]]
        step = replace(step, ear_index=ear, relabel_offset=relabel)
        trace.append(step)
        offset = (ear + 1) % parent.n
        logger.log_operation(
            "insert_ear",
            f"n={parent.n} ear={ear} eps={step.epsilon:.3e} halvings={step.halvings} "
            f"margin={step.margin:.3e}",
        )
    return vertices, t, roots, trace, offset


def solve(polygon: Polygon, options: Optional[SolverOptions] = None,
          root_options: Optional[RootOptions] = None,
          verification=None, verify: bool = True) -> Certificate:
    """
    Certified step map for a normalized polygon

    Ears are clipped best ranked first. When an insertion cannot be
    certified, that ear is banned for its polygon and a new chain is built,
    up to options.max_backtracks times.

    Args:
        polygon: output of polygon.normalize
        options: epsilon-search limits
        root_options: root finder settings
        verification: certify.VerificationOptions for the final check
        verify: run certify.verify on the result and store it in checks

    Returns:
        Certificate whose vertex order is the input's rotated by vertex_offset

    Raises:
        NotCertifiedError: every ear chain tried failed (EpsilonExhaustedError,
            RootsNotConvergedError) or no chain avoids collinear triples
            (EarChainExhaustedError)
    """
    options = options or SolverOptions.from_config()
    root_options = root_options or RootOptions.from_config()
    logger = get_logger()

    banned: EarBans = {}
    dead: Set[Tuple[complex, ...]] = set()
    attempt = 0
    failure: Optional[NotCertifiedError] = None
    while True:
        chain = _clip_chain(polygon, banned, dead)
        if chain is None and failure is not None:
            # every remaining order was banned by an earlier failure
            failure.details["attempts"] = attempt
            raise failure
        if chain is None:
            raise EarChainExhaustedError(
                "no ear order reaches a triangle without three collinear vertices",
                {"vertices": polygon.n, "attempts": attempt},
            )
        base = clip_ear(*chain[-1]) if chain else polygon
        try:
            vertices, t, roots, trace, offset = _build(chain, base, options, root_options)
            break
        except CoincidentPolesError as e:
            failure = NotCertifiedError(str(e), {"level": len(chain) - 1})
        except NotCertifiedError as e:
            failure = e
        attempt += 1
        level = failure.details.get("level", -1)
        if attempt > options.max_backtracks or not chain or level < 0:
            failure.details["attempts"] = attempt
            raise failure
        parent, ear = chain[level]
        banned.setdefault(parent.vertices, set()).add(ear)
        logger.log_operation(
            "backtrack", f"n={parent.n} ear={ear} {failure}", success=False)

    out = Polygon(tuple(vertices))
    certificate = Certificate(StepMap(out, t), roots, tuple(trace), offset if chain else 0)

    if verify:
        report = certify.verify(certificate.step_map, verification, root_options)
        certificate = Certificate(certificate.step_map, roots, certificate.ear_trace,
                                  certificate.vertex_offset, report)
    logger.log_operation(
        "solve",
        f"n={polygon.n} margin={certificate.exterior_margin:.3e} ears={len(trace)}",
    )
    return certificate
