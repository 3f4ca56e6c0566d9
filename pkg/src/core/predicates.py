"""
Exact planar predicates on complex points
Floating-point filter with a rational fallback for near-degenerate inputs
"""
import math
import sys
from fractions import Fraction

import numpy as np

_EPSILON = sys.float_info.epsilon / 2.0
# Shewchuk's first-stage bound for the 2x2 orientation determinant
_CCW_ERRBOUND = (3.0 + 16.0 * _EPSILON) * _EPSILON


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def _exact_orient(a: complex, b: complex, c: complex) -> int:
    ax, ay = Fraction(a.real), Fraction(a.imag)
    bx, by = Fraction(b.real), Fraction(b.imag)
    cx, cy = Fraction(c.real), Fraction(c.imag)
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def orient(a: complex, b: complex, c: complex) -> int:
    """
    Orientation of the triple (a, b, c)

    Returns:
        +1 for a counter-clockwise turn, -1 for clockwise, 0 when collinear.
        The sign is exact for any finite double inputs.
    """
    detleft = (a.real - c.real) * (b.imag - c.imag)
    detright = (a.imag - c.imag) * (b.real - c.real)
    det = detleft - detright

    if detleft > 0.0:
        if detright <= 0.0:
            return _sign(det)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return _sign(det)
        detsum = -detleft - detright
    else:
        return _sign(det)

    if abs(det) >= _CCW_ERRBOUND * detsum:
        return _sign(det)
    return _exact_orient(a, b, c)


def on_segment(a: complex, b: complex, p: complex) -> bool:
    """True when p lies on the closed segment [a, b]"""
    if orient(a, b, p) != 0:
        return False
    return (min(a.real, b.real) <= p.real <= max(a.real, b.real)
            and min(a.imag, b.imag) <= p.imag <= max(a.imag, b.imag))


def segments_intersect(a: complex, b: complex, c: complex, d: complex) -> bool:
    """True when the closed segments [a, b] and [c, d] share at least one point"""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)

    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (on_segment(a, b, c) or on_segment(a, b, d)
            or on_segment(c, d, a) or on_segment(c, d, b))


def point_in_closed_triangle(p: complex, a: complex, b: complex, c: complex) -> bool:
    """Point-in-triangle test for a counter-clockwise triangle, boundary included"""
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def point_segment_distance(p, a: complex, b: complex):
    """Euclidean distance from p (scalar or array) to the segment [a, b]"""
    p = np.asarray(p, dtype=complex)
    edge = b - a
    length2 = edge.real * edge.real + edge.imag * edge.imag
    if length2 == 0.0:
        return np.abs(p - a)
    s = ((p - a) * np.conj(edge)).real / length2
    s = np.clip(s, 0.0, 1.0)
    return np.abs(p - (a + s * edge))


def triangle_distance(p: complex, a: complex, b: complex, c: complex) -> float:
    """Distance from p to the closed counter-clockwise triangle (a, b, c)"""
    if point_in_closed_triangle(p, a, b, c):
        return 0.0
    return float(min(point_segment_distance(p, a, b),
                     point_segment_distance(p, b, c),
                     point_segment_distance(p, c, a)))


def shoelace(points) -> float:
    """Signed area of a closed polygon given by its vertex sequence"""
    pts = list(points)
    terms = []
    for k, z in enumerate(pts):
        w = pts[(k + 1) % len(pts)]
        terms.append(z.real * w.imag - w.real * z.imag)
    return 0.5 * math.fsum(terms)
