"""
Polygon - Jordan polygon representation, validation and ear machinery
All indices are 0-based; vertex i has neighbours i-1 and i+1 taken cyclically
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from core.errors import (
    CollinearTripleError,
    DuplicateVertexError,
    InvalidPolygonError,
    NoTwoEarsError,
    NotAnEarError,
    SelfIntersectingError,
    TooFewVerticesError,
)
from core.predicates import (
    orient,
    point_in_closed_triangle,
    point_segment_distance,
    segments_intersect,
    shoelace,
    triangle_distance,
)


@dataclass(frozen=True)
class Polygon:
    """Positively oriented Jordan polygon with vertices c_0..c_{n-1}"""
    vertices: Tuple[complex, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, i: int) -> complex:
        return self.vertices[i % len(self.vertices)]

    def as_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=complex)

    def rotated(self, offset: int) -> "Polygon":
        """Same polygon with vertex `offset` relabelled as vertex 0"""
        k = offset % self.n
        return Polygon(self.vertices[k:] + self.vertices[:k])

    def edges(self) -> List[Tuple[complex, complex]]:
        return [(self[i], self[i + 1]) for i in range(self.n)]


@dataclass(frozen=True)
class EarReport:
    """Ears of a polygon with their robustness scores"""
    ear_indices: Tuple[int, ...]
    robustness: Tuple[float, ...]

    def __len__(self):
        return len(self.ear_indices)

    def ranked(self) -> List[int]:
        """Ear indices sorted by decreasing robustness, ties by smallest index"""
        order = sorted(zip(self.ear_indices, self.robustness), key=lambda item: (-item[1], item[0]))
        return [index for index, _ in order]

    def to_dict(self) -> dict:
        return {
            "ears": [
                {"index": i, "robustness": None if math.isinf(r) else r}
                for i, r in zip(self.ear_indices, self.robustness)
            ]
        }


def _as_complex(point) -> complex:
    if isinstance(point, complex):
        return point
    if isinstance(point, (int, float)):
        return complex(point)
    x, y = point
    return complex(float(x), float(y))


def _check_simple(vertices: Sequence[complex]):
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = vertices[j], vertices[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges: they share one vertex and may only overlap if they fold back
                shared, p, q = (b, a, d) if j == i + 1 else (a, b, c)
                if orient(p, shared, q) == 0 and (
                        (p - shared) * (q - shared).conjugate()).real > 0:
                    raise SelfIntersectingError(
                        f"edges {i} and {j} overlap along a segment",
                        {"edges": [i, j]},
                    )
                continue
            if segments_intersect(a, b, c, d):
                raise SelfIntersectingError(
                    f"edges {i} and {j} intersect",
                    {"edges": [i, j]},
                )


def _check_no_collinear(vertices: Sequence[complex]):
    n = len(vertices)
    for i in range(n):
        if orient(vertices[i - 1], vertices[i], vertices[(i + 1) % n]) == 0:
            raise CollinearTripleError(
                f"vertices {(i - 1) % n}, {i}, {(i + 1) % n} are collinear",
                {"vertex": i},
            )


def normalize(raw_vertices: Iterable) -> Polygon:
    """
    Validate a vertex list and return it as a counter-clockwise Polygon

    Args:
        raw_vertices: complex numbers or (x, y) pairs

    Returns:
        Polygon, reversed when the input is clockwise

    Raises:
        TooFewVerticesError, DuplicateVertexError, SelfIntersectingError,
        CollinearTripleError, InvalidPolygonError (non-finite coordinates)
    """
    vertices = [_as_complex(v) for v in raw_vertices]
    if len(vertices) < 3:
        raise TooFewVerticesError(f"a polygon needs at least 3 vertices, got {len(vertices)}")
    for i, z in enumerate(vertices):
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise InvalidPolygonError(f"vertex {i} is not finite", {"vertex": i})

    seen = {}
    for i, z in enumerate(vertices):
        if z in seen:
            raise DuplicateVertexError(
                f"vertices {seen[z]} and {i} coincide",
                {"vertices": [seen[z], i]},
            )
        seen[z] = i

    _check_simple(vertices)
    _check_no_collinear(vertices)

    if shoelace(vertices) < 0:
        vertices.reverse()
    return Polygon(tuple(vertices))


def signed_area(p: Polygon) -> float:
    """Shoelace area, positive for counter-clockwise order"""
    return shoelace(p.vertices)


def _triangle(p: Polygon, i: int) -> Tuple[complex, complex, complex]:
    return p[i - 1], p[i], p[i + 1]


def is_ear(p: Polygon, i: int) -> bool:
    """
    Whether vertex i can be clipped leaving a Jordan polygon

    Strictly convex corner, no other vertex in the closed triangle
    (c_{i-1}, c_i, c_{i+1}) and the diagonal c_{i-1}c_{i+1} crosses no
    edge that is not incident to its endpoints.
    """
    n = p.n
    i %= n
    a, b, c = _triangle(p, i)
    if orient(a, b, c) <= 0:
        return False
    if n == 3:
        return True

    prev, nxt = (i - 1) % n, (i + 1) % n
    for j in range(n):
        if j in (prev, i, nxt):
            continue
        if point_in_closed_triangle(p[j], a, b, c):
            return False

    for j in range(n):
        k = (j + 1) % n
        if prev in (j, k) or nxt in (j, k):
            continue
        if segments_intersect(a, c, p[j], p[k]):
            return False
    return True


def ear_robustness(p: Polygon, i: int) -> float:
    """Minimum distance from the closed ear triangle to the remaining vertices"""
    n = p.n
    if n == 3:
        return math.inf
    a, b, c = _triangle(p, i)
    others = [p[j] for j in range(n) if j not in ((i - 1) % n, i % n, (i + 1) % n)]
    return min(triangle_distance(z, a, b, c) for z in others)


def find_ears(p: Polygon) -> EarReport:
    """All ears of p with robustness scores; a valid polygon always has two"""
    indices = [i for i in range(p.n) if is_ear(p, i)]
    if len(indices) < 2:
        raise NoTwoEarsError(
            f"found {len(indices)} ear(s) on a {p.n}-gon",
            {"ears": indices},
        )
    return EarReport(tuple(indices), tuple(ear_robustness(p, i) for i in indices))


def clip_ear(p: Polygon, i: int) -> Polygon:
    """Remove ear vertex i; the result keeps the cyclic order of the survivors"""
    if p.n < 4:
        raise TooFewVerticesError("cannot clip an ear from a triangle")
    i %= p.n
    if not is_ear(p, i):
        raise NotAnEarError(f"vertex {i} is not an ear", {"vertex": i})
    return normalize(p.vertices[:i] + p.vertices[i + 1:])


def clip_creates_collinear(p: Polygon, i: int) -> bool:
    """Whether clipping vertex i would leave three collinear consecutive vertices"""
    return orient(p[i - 2], p[i - 1], p[i + 1]) == 0 or orient(p[i - 1], p[i + 1], p[i + 2]) == 0


def triangulate(p: Polygon) -> List[Tuple[int, int, int]]:
    """
    Ear-clipping triangulation

    Returns:
        counter-clockwise index triples into p.vertices
    """
    working = list(range(p.n))
    triangles = []
    while len(working) > 3:
        m = len(working)
        for pos in range(m):
            i_prev, i_cur, i_next = working[pos - 1], working[pos], working[(pos + 1) % m]
            a, b, c = p.vertices[i_prev], p.vertices[i_cur], p.vertices[i_next]
            if orient(a, b, c) <= 0:
                continue
            if any(point_in_closed_triangle(p.vertices[j], a, b, c)
                   for j in working if j not in (i_prev, i_cur, i_next)):
                continue
            triangles.append((i_prev, i_cur, i_next))
            del working[pos]
            break
        else:
            raise NoTwoEarsError(f"triangulation stalled with {m} vertices left")
    triangles.append(tuple(working))
    return triangles


def boundary_distance(p: Polygon, points):
    """Distance from each point to the polygon boundary"""
    points = np.asarray(points, dtype=complex)
    best = np.full(points.shape, np.inf)
    for a, b in p.edges():
        best = np.minimum(best, point_segment_distance(points, a, b))
    return best


def interior_points(p: Polygon, count: int = 16) -> List[complex]:
    """
    Interior points for winding tests, ranked by clearance from the boundary

    Candidates are triangle centroids of the triangulation and, for each
    triangle, the three points weighted (1/2, 1/4, 1/4) towards a corner.
    """
    candidates = []
    for i, j, k in triangulate(p):
        a, b, c = p.vertices[i], p.vertices[j], p.vertices[k]
        candidates.append((a + b + c) / 3.0)
        candidates.append(0.5 * a + 0.25 * b + 0.25 * c)
        candidates.append(0.25 * a + 0.5 * b + 0.25 * c)
        candidates.append(0.25 * a + 0.25 * b + 0.5 * c)
    clearance = boundary_distance(p, candidates)
    order = sorted(range(len(candidates)), key=lambda idx: (-clearance[idx], idx))
    return [candidates[idx] for idx in order[:count]]
