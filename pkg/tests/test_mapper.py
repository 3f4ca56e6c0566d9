"""
Tests for the inductive construction of certified step maps
"""
import math

import numpy as np
import pytest

from conftest import EARED_SQUARE, convex_polygon, random_walk_polygon, regular_vertices, star_polygon
from core import mapper
from core.errors import (
    CoincidentPolesError,
    EarChainExhaustedError,
    EpsilonExhaustedError,
    NotCertifiedError,
    NotOutsideCornerError,
)
from core.mapper import (
    EarStep,
    SolverOptions,
    ear_limit_point,
    ear_partition,
    insert_ear,
    renormalized_residual,
    solve,
)
from core.pole_sum import evaluate, find_roots, from_step_map
from core.poisson import equal_partition
from core.polygon import normalize
from utils.config import Config

TWO_PI = 2 * math.pi


def eared_square():
    """(square vertices, ear) with the ear last; w0 = (1 - i) / 2"""
    vertices = [complex(x, y) for x, y in EARED_SQUARE]
    return vertices, (1 - 1j) / 2


def assert_certified(certificate, polygon, min_margin=1e-9):
    assert certificate.exterior_margin > min_margin
    assert certificate.checks is not None
    assert certificate.checks.passed, certificate.checks.to_dict()
    assert certificate.step_map.polygon.vertices == polygon.rotated(certificate.vertex_offset).vertices
    assert len(certificate.ear_trace) == polygon.n - 3


class TestEarGeometry:

    def test_limit_point(self):
        w0 = ear_limit_point([1 + 1j, 0j, 1 + 0j])
        assert w0 == pytest.approx((1 - 1j) / 2)
        assert w0.real > 0

    def test_limit_point_of_eared_square(self):
        vertices, w0 = eared_square()
        assert ear_limit_point(vertices) == pytest.approx(w0)

    def test_partition(self):
        tau = ear_partition([0.0, 1.0, 2.0, TWO_PI], 0.1)
        assert np.allclose(tau, [0.0, 1.0, 2.0, TWO_PI - 0.1, TWO_PI])
        assert tau[-1] == TWO_PI

    def test_inside_corner_rejected(self):
        vertices, _ = eared_square()
        vertices[-1] = 0.5 + 1j
        with pytest.raises(NotOutsideCornerError):
            insert_ear(equal_partition(4), vertices)


class TestRenormalization:

    def test_converges_to_two_term_limit(self):
        vertices, w0 = eared_square()
        w = w0 + 0.3 * np.exp(1j * np.linspace(0, TWO_PI, 32, endpoint=False))
        errors = []
        for eps in (1e-3, 1e-4, 1e-5):
            tau = ear_partition(equal_partition(4), eps)
            beta = from_step_map(vertices, tau).residues
            limit = beta[-2] / (w + 1j) + beta[-1] / w
            error = np.abs(renormalized_residual(vertices, tau, eps, w) - limit).max()
            assert error <= 10 * eps * (abs(beta[-2]) + abs(beta[-1]))
            errors.append(error)
        assert errors[0] / errors[1] > 5
        assert errors[1] / errors[2] > 5

    def test_matches_scaled_pole_sum(self):
        vertices, w0 = eared_square()
        eps = 1e-2
        tau = ear_partition(equal_partition(4), eps)
        ps = from_step_map(vertices, tau)
        direct = eps * evaluate(ps, 1 + eps * w0)
        assert renormalized_residual(vertices, tau, eps, w0) == pytest.approx(direct, rel=1e-10)

    def test_epsilon_must_be_positive(self):
        vertices, _ = eared_square()
        with pytest.raises(ValueError):
            renormalized_residual(vertices, ear_partition(equal_partition(4), 0.1), 0.0, 1.0)


class TestNewRootTracking:

    def test_new_root_approaches_limit_point(self):
        vertices, w0 = eared_square()
        old = find_roots(from_step_map(vertices[:-1], equal_partition(4)))
        errors = []
        for eps in (1e-2, 1e-3, 1e-4):
            tau = ear_partition(equal_partition(4), eps)
            roots = find_roots(from_step_map(vertices, tau), seeds=list(old.roots) + [1 + eps * w0])
            near = roots.roots[np.abs(roots.roots - (1 + eps * w0)) < 10 * eps]
            assert near.size == 1
            errors.append(abs((near[0] - 1) / eps - w0))
        assert errors[2] < 1e-2
        assert errors[0] / errors[1] > 5
        assert errors[1] / errors[2] > 5

    def test_insert_ear_certifies_square_ear(self):
        vertices, w0 = eared_square()
        tau, roots, step = insert_ear(equal_partition(4), vertices)
        assert isinstance(step, EarStep)
        assert step.margin > 1e-9
        assert roots.exterior_margin == step.margin
        assert tau[-2] == pytest.approx(TWO_PI - step.epsilon)
        assert step.w0 == pytest.approx(w0)
        assert abs(step.tracked_root - 1) < 10 * step.epsilon

    def test_halving_cap(self):
        vertices, _ = eared_square()
        options = SolverOptions(eps0=0.5, min_margin=1e3, max_halvings=3)
        with pytest.raises(NotCertifiedError) as info:
            insert_ear(equal_partition(4), vertices, options)
        assert info.value.code == "ERR_EPSILON_EXHAUSTED"

    def test_epsilon_floor(self):
        vertices, _ = eared_square()
        options = SolverOptions(eps0=0.5, min_margin=1e3, max_halvings=60, min_epsilon=1e-3)
        with pytest.raises(EpsilonExhaustedError) as info:
            insert_ear(equal_partition(4), vertices, options)
        assert info.value.details["epsilon"] == pytest.approx(0.5 / 2 ** 8)
        assert info.value.details["best_margin"] < 1e3

    def test_collapsed_arc_is_not_certified(self):
        # without a floor epsilon shrinks until 2 pi - epsilon rounds to 2 pi
        vertices, _ = eared_square()
        options = SolverOptions(eps0=0.5, min_margin=1e3, max_halvings=80, min_epsilon=0.0)
        with pytest.raises(EpsilonExhaustedError):
            insert_ear(equal_partition(4), vertices, options)


def forced_failures(monkeypatch, count):
    """Make the first `count` ear insertions fail; returns the call log"""
    calls = []
    real = mapper.insert_ear

    def flaky(*args, **kwargs):
        calls.append(len(args[1]))
        if len(calls) <= count:
            raise EpsilonExhaustedError("forced failure", {"epsilon": 1e-12})
        return real(*args, **kwargs)

    monkeypatch.setattr(mapper, "insert_ear", flaky)
    return calls


class TestBacktracking:

    def test_recovers_with_another_ear(self, monkeypatch, l_shape):
        calls = forced_failures(monkeypatch, 1)
        certificate = solve(l_shape)
        assert_certified(certificate, l_shape)
        assert calls[0] == 4
        assert len(calls) > 3

    def test_backtrack_limit(self, monkeypatch, l_shape):
        forced_failures(monkeypatch, 1)
        with pytest.raises(EpsilonExhaustedError) as info:
            solve(l_shape, SolverOptions(max_backtracks=0))
        assert info.value.details["attempts"] == 1
        assert info.value.details["level"] == 2

    def test_every_insertion_failing(self, monkeypatch, l_shape):
        forced_failures(monkeypatch, 10 ** 6)
        with pytest.raises(NotCertifiedError) as info:
            solve(l_shape, SolverOptions(max_backtracks=3))
        assert info.value.details["attempts"] <= 4

    def test_coincident_poles_become_not_certified(self, monkeypatch, l_shape):
        def collapse(*args, **kwargs):
            raise CoincidentPolesError("angles 4 and 5 coincide")

        monkeypatch.setattr(mapper, "insert_ear", collapse)
        with pytest.raises(NotCertifiedError) as info:
            solve(l_shape, SolverOptions(max_backtracks=0))
        assert not isinstance(info.value, CoincidentPolesError)
        assert "ERR_COINCIDENT_POLES" in info.value.message

    def test_collinear_dead_end(self):
        # every convex corner's clip leaves three collinear vertices
        p = normalize([(4, 5), (0, 5), (1, 2), (2, 3), (4, 1)])
        with pytest.raises(EarChainExhaustedError) as info:
            solve(p)
        assert isinstance(info.value, NotCertifiedError)
        assert info.value.code == "ERR_COLLINEAR_TRIPLE"

    def test_collinear_fallback_chain(self):
        p = normalize([(2, 3), (4, 3), (2, 4), (2, 5), (1, 3), (0, 3), (0, 2)])
        try:
            certificate = solve(p, verify=False)
        except NotCertifiedError:
            return
        assert certificate.exterior_margin > 1e-9
        assert len(certificate.ear_trace) == p.n - 3


class TestSolve:

    def test_triangle_base_case(self, triangle):
        certificate = solve(triangle)
        assert np.allclose(certificate.step_map.partition, [0, TWO_PI / 3, 2 * TWO_PI / 3, TWO_PI])
        assert certificate.ear_trace == ()
        assert certificate.vertex_offset == 0
        assert_certified(certificate, triangle)

    def test_square(self, square):
        assert_certified(solve(square), square)

    def test_l_shape(self, l_shape):
        certificate = solve(l_shape)
        assert_certified(certificate, l_shape)
        assert len(certificate.ear_trace) == 3
        assert certificate.checks.collisions == 0

    def test_dart(self, dart):
        assert_certified(solve(dart), dart)

    def test_comb(self, comb):
        assert_certified(solve(comb), comb)

    def test_spiral(self, spiral):
        assert_certified(solve(spiral), spiral)

    def test_regular_polygon(self):
        p = normalize(regular_vertices(8))
        assert_certified(solve(p), p)

    @pytest.mark.parametrize("seed", range(6))
    def test_convex_polygons(self, seed):
        p = normalize(convex_polygon(seed, 5 + seed % 4))
        assert_certified(solve(p), p)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(200))
    def test_random_polygons(self, seed):
        p = normalize(star_polygon(1000 + seed, 4 + seed % 9))
        assert_certified(solve(p), p)

    def test_nested_ear_polygon(self):
        # its seventh ear once halved epsilon until two poles merged
        p = normalize([(2.2601, -2.0029), (2.0248, -1.0502), (1.4949, 0.5560), (1.0867, -0.7178),
                       (0.9205, 0.5752), (0.7020, 0.5379), (1.0180, -0.2723), (0, 0)])
        try:
            certificate = solve(p, verify=False)
        except NotCertifiedError as e:
            assert not isinstance(e, CoincidentPolesError)
            assert "attempts" in e.details
            return
        assert certificate.exterior_margin > 1e-9

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(120))
    def test_random_walk_polygons(self, seed):
        p = random_walk_polygon(seed, 4 + seed % 9)
        try:
            certificate = solve(p, verify=False)
        except NotCertifiedError as e:
            assert not isinstance(e, CoincidentPolesError)
            return
        assert certificate.exterior_margin > 1e-9
        assert len(certificate.ear_trace) == p.n - 3

    def test_ear_trace_records_search(self, l_shape):
        certificate = solve(l_shape)
        for step in certificate.ear_trace:
            assert 0 < step.epsilon <= 0.5
            assert step.halvings >= 0
            assert step.margin > 1e-9
            data = step.to_dict()
            assert set(data) == {"ear_index", "epsilon", "w0", "relabel_offset", "halvings", "margin"}

    def test_partition_is_valid(self, comb):
        t = solve(comb, verify=False).step_map.partition
        assert t[0] == 0.0 and t[-1] == TWO_PI
        assert np.all(np.diff(t) > 0)

    def test_skip_verification(self, l_shape):
        assert solve(l_shape, verify=False).checks is None

    def test_stored_roots_match_fresh_roots(self, l_shape):
        certificate = solve(l_shape, verify=False)
        fresh = find_roots(certificate.step_map.h_prime())
        assert len(fresh) == len(certificate.roots)
        assert fresh.exterior_margin == pytest.approx(certificate.exterior_margin, abs=1e-10)

    def test_options_from_config(self):
        config = Config(None)
        config.set("solver.eps0", 0.25)
        options = SolverOptions.from_config(config, max_halvings=10)
        assert options.eps0 == 0.25
        assert options.max_halvings == 10
        assert options.min_margin == 1e-9
