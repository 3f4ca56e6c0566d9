"""
Tests for polygon validation, predicates and ear machinery
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import COMB, DART, L_SHAPE, SPIRAL, random_walk_polygon, regular_vertices, star_polygon
from core.errors import (
    CollinearTripleError,
    DuplicateVertexError,
    InvalidPolygonError,
    NotAnEarError,
    SelfIntersectingError,
    TooFewVerticesError,
)
from core.polygon import (
    Polygon,
    boundary_distance,
    clip_creates_collinear,
    clip_ear,
    ear_robustness,
    find_ears,
    interior_points,
    is_ear,
    normalize,
    signed_area,
    triangulate,
)
from core.predicates import (
    orient,
    point_in_closed_triangle,
    point_segment_distance,
    segments_intersect,
    shoelace,
)


def _fraction_orient(a, b, c):
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (a.real, a.imag, b.real, b.imag, c.real, c.imag))
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (det > 0) - (det < 0)


def _simple(vertices):
    """Brute force: no two edges meet except adjacent ones at their shared vertex"""
    n = len(vertices)
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            (a, b), (c, d) = edges[i], edges[j]
            if j == i + 1 or (i == 0 and j == n - 1):
                u, v, w = (a, b, d) if j == i + 1 else (c, d, b)
                if orient(u, v, w) == 0 and ((w - v) * (u - v).conjugate()).real > 0:
                    return False
            elif segments_intersect(a, b, c, d):
                return False
    return True


def _clip_oracle(p, i):
    """Vertex i is an ear when it is convex and the rest stays a simple ccw polygon"""
    a, b, c = p[i - 1], p[i], p[i + 1]
    rest = p.vertices[:i] + p.vertices[i + 1:]
    return orient(a, b, c) > 0 and _simple(rest) and shoelace(rest) > 0


class TestPredicates:

    def test_orient_signs(self):
        assert orient(0j, 1 + 0j, 1j) == 1
        assert orient(0j, 1j, 1 + 0j) == -1
        assert orient(0j, 1 + 1j, 2 + 2j) == 0

    def test_orient_exact_on_representable_line(self):
        assert orient(complex(0.1, 0.1), complex(0.3, 0.3), complex(0.7, 0.7)) == 0

    def test_orient_matches_rational_arithmetic_near_degenerate(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            a = complex(*rng.uniform(-1, 1, 2))
            b = complex(*rng.uniform(-1, 1, 2))
            s = rng.uniform(-0.5, 1.5)
            c = a + s * (b - a)
            assert orient(a, b, c) == _fraction_orient(a, b, c)

    def test_segments_intersect_closed(self):
        assert segments_intersect(0j, 2 + 0j, 1 - 1j, 1 + 1j)
        assert segments_intersect(0j, 2 + 0j, 2 + 0j, 3 + 1j)
        assert not segments_intersect(0j, 1 + 0j, 2 + 0j, 3 + 0j)

    def test_point_in_closed_triangle_includes_boundary(self):
        a, b, c = 0j, 2 + 0j, 2j
        assert point_in_closed_triangle(1 + 1j, a, b, c)
        assert point_in_closed_triangle(0.5 + 0.5j, a, b, c)
        assert not point_in_closed_triangle(1.5 + 1.5j, a, b, c)

    def test_point_segment_distance(self):
        d = point_segment_distance(np.array([1 + 1j, -1 + 0j, 3 + 0j]), 0j, 2 + 0j)
        assert np.allclose(d, [1.0, 1.0, 1.0])

    def test_shoelace(self):
        assert shoelace([0j, 1 + 0j, 1 + 1j, 1j]) == 1.0


class TestNormalize:

    def test_ccw_input_kept(self):
        p = normalize([(0, 0), (1, 0), (0, 1)])
        assert p.vertices == (0j, 1 + 0j, 1j)
        assert signed_area(p) == pytest.approx(0.5)

    def test_cw_input_reversed(self):
        p = normalize([(0, 0), (0, 1), (1, 0)])
        assert signed_area(p) == pytest.approx(0.5)
        assert set(p.vertices) == {0j, 1 + 0j, 1j}

    def test_accepts_complex_input(self):
        p = normalize([0, 1, 1j])
        assert p.n == 3

    def test_self_intersecting(self):
        with pytest.raises(SelfIntersectingError) as info:
            normalize([(0, 0), (2, 0), (1, 1), (1, -1)])
        assert info.value.code == "ERR_SELF_INTERSECTING"

    def test_fold_back_of_adjacent_edges(self):
        with pytest.raises(InvalidPolygonError):
            normalize([(0, 0), (2, 0), (1, 0), (1, 1)])

    def test_too_few_vertices(self):
        with pytest.raises(TooFewVerticesError):
            normalize([(0, 0), (1, 0)])

    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateVertexError):
            normalize([(0, 0), (1, 0), (1, 1), (1, 0)])

    def test_collinear_triple(self):
        with pytest.raises(CollinearTripleError):
            normalize([(0, 0), (1, 0), (2, 0), (1, 1)])

    def test_non_finite(self):
        with pytest.raises(InvalidPolygonError):
            normalize([(0, 0), (1, float("nan")), (0, 1)])

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            normalize([(0, 0)])


class TestAreaAndPolygon:

    def test_unit_square_area(self, square):
        assert signed_area(square) == 1.0

    def test_reversal_negates_area(self, l_shape):
        reversed_p = Polygon(tuple(reversed(l_shape.vertices)))
        assert signed_area(reversed_p) == -signed_area(l_shape)

    def test_rotated_relabels(self, square):
        rotated = square.rotated(1)
        assert rotated[0] == square[1]
        assert rotated.rotated(-1).vertices == square.vertices

    def test_boundary_distance(self, square):
        d = boundary_distance(square, [0.5 + 0.5j, 0.25 + 0.5j])
        assert np.allclose(d, [0.5, 0.25])


class TestEars:

    def test_every_convex_vertex_is_ear(self):
        p = normalize(regular_vertices(7))
        assert all(is_ear(p, i) for i in range(p.n))

    def test_l_shape_reflex_vertex(self, l_shape):
        assert l_shape[3] == 1 + 1j
        assert not is_ear(l_shape, 3)

    def test_l_shape_vertex_touching_reflex_corner(self, l_shape):
        # triangle (0,2),(0,0),(2,0) has (1,1) on its hypotenuse
        assert not is_ear(l_shape, 0)

    def test_l_shape_ear_set(self, l_shape):
        assert find_ears(l_shape).ear_indices == (1, 2, 4, 5)

    def test_square_has_four_ears(self, square):
        report = find_ears(square)
        assert len(report) == 4
        assert report.ranked() == [0, 1, 2, 3]
        assert report.robustness[0] == pytest.approx(1 / math.sqrt(2))

    def test_triangle_has_three_ears(self, triangle):
        report = find_ears(triangle)
        assert report.ear_indices == (0, 1, 2)
        assert all(r is None for r in (e["robustness"] for e in report.to_dict()["ears"]))

    def test_robustness_ranking_ties_by_index(self, l_shape):
        report = find_ears(l_shape)
        ranked = report.ranked()
        scores = [ear_robustness(l_shape, i) for i in ranked]
        assert scores == sorted(scores, reverse=True)

    @pytest.mark.parametrize("seed", range(200))
    def test_random_polygons_have_two_ears(self, seed):
        p = normalize(star_polygon(seed, 4 + seed % 9))
        assert len(find_ears(p)) >= 2

    @pytest.mark.parametrize("seed", range(60))
    def test_is_ear_matches_clip_oracle(self, seed):
        if seed % 2:
            p = random_walk_polygon(seed, 4 + seed % 9)
        else:
            p = normalize(star_polygon(500 + seed, 4 + seed % 9))
        for i in range(p.n):
            assert is_ear(p, i) == _clip_oracle(p, i), (seed, i)

    @pytest.mark.parametrize("vertices", [L_SHAPE, DART, COMB, SPIRAL])
    def test_hand_polygons_match_clip_oracle(self, vertices):
        p = normalize(vertices)
        assert [is_ear(p, i) for i in range(p.n)] == [_clip_oracle(p, i) for i in range(p.n)]


class TestClip:

    def test_square_minus_corner(self, square):
        t = clip_ear(square, 2)
        assert t.n == 3
        assert signed_area(t) == pytest.approx(0.5)

    @pytest.mark.parametrize("i", range(5))
    def test_pentagon_minus_vertex_is_convex(self, i):
        q = clip_ear(normalize(regular_vertices(5)), i)
        assert q.n == 4
        assert len(find_ears(q)) == 4

    def test_l_shape_clip_is_simple(self, l_shape):
        clipped = clip_ear(l_shape, 2)
        assert normalize(clipped.vertices).vertices == clipped.vertices
        assert clipped.n == 5

    def test_clip_non_ear(self, l_shape):
        with pytest.raises(NotAnEarError):
            clip_ear(l_shape, 3)

    def test_clip_triangle(self, triangle):
        with pytest.raises(TooFewVerticesError):
            clip_ear(triangle, 0)

    def test_clip_creates_collinear(self):
        p = normalize([(0, 0), (1, -1), (2, 0), (3, 0), (3, 1), (0, 1)])
        assert is_ear(p, 1)
        assert clip_creates_collinear(p, 1)
        assert not clip_creates_collinear(p, 4)

    @pytest.mark.parametrize("seed", range(40))
    def test_clip_removes_ear_area(self, seed):
        n = 5 + seed % 8
        p = random_walk_polygon(seed, n) if seed % 2 else normalize(star_polygon(seed, n))
        for i in find_ears(p).ear_indices:
            if clip_creates_collinear(p, i):
                continue
            ear = shoelace([p[i - 1], p[i], p[i + 1]])
            assert signed_area(clip_ear(p, i)) == pytest.approx(signed_area(p) - ear, rel=1e-12, abs=1e-12)


class TestTriangulation:

    @pytest.mark.parametrize("vertices", [L_SHAPE, COMB, SPIRAL])
    def test_triangles_cover_area(self, vertices):
        p = normalize(vertices)
        triangles = triangulate(p)
        assert len(triangles) == p.n - 2
        total = sum(shoelace([p.vertices[i] for i in tri]) for tri in triangles)
        assert total == pytest.approx(signed_area(p))
        assert all(shoelace([p.vertices[i] for i in tri]) > 0 for tri in triangles)

    @pytest.mark.parametrize("vertices", [L_SHAPE, COMB, SPIRAL])
    def test_interior_points_inside(self, vertices):
        p = normalize(vertices)
        points = interior_points(p, 12)
        assert len(points) == 12
        assert np.all(boundary_distance(p, points) > 0)
        for q in points:
            assert any(
                all(orient(p.vertices[a], p.vertices[b], q) > 0
                    for a, b in ((i, j), (j, k), (k, i)))
                for i, j, k in triangulate(p)
            )
        assert points == interior_points(p, 12)
