"""
Tests for the minimal enclosing ball solver and its optimality certificate.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.enclosing import PointSet, brute_force_meb, kkt_certificate, minimax_objective, solve_meb
from src.errors import InputError

EQUILATERAL = PointSet(points=[[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])


class TestPointSet:
    """Test point set validation."""

    def test_dimension_inferred(self):
        """Test the dimension is taken from the first point."""
        assert PointSet(points=[[1, 2, 3]]).dimension == 3

    def test_empty(self):
        """Test an empty set is rejected."""
        with pytest.raises(ValidationError):
            PointSet(points=[])

    def test_ragged(self):
        """Test points of different dimension are rejected."""
        with pytest.raises(ValidationError):
            PointSet(points=[[0, 0], [1, 0, 0]])

    def test_non_finite(self):
        """Test infinite coordinates are rejected."""
        with pytest.raises(ValidationError):
            PointSet(points=[[0, math.inf]])


class TestSolveMEB:
    """Test the move-to-front Welzl solver on known configurations."""

    def test_two_points(self):
        """Test the ball of two points is centred at their midpoint."""
        ball = solve_meb(PointSet(points=[[0, 0], [2, 0]]))
        assert ball.center == pytest.approx([1, 0])
        assert ball.radius == pytest.approx(1)

    def test_unit_square(self):
        """Test the unit square has centre (1/2, 1/2) and radius sqrt(2)/2."""
        ball = solve_meb(PointSet(points=[[0, 0], [1, 0], [0, 1], [1, 1]]))
        assert ball.center == pytest.approx([0.5, 0.5])
        assert ball.radius == pytest.approx(math.sqrt(2) / 2)

    def test_collinear(self):
        """Test three collinear points use the outer pair."""
        ball = solve_meb(PointSet(points=[[0, 0], [1, 0], [2, 0]]))
        assert ball.center == pytest.approx([1, 0])
        assert ball.radius == pytest.approx(1)

    def test_equilateral_triangle(self):
        """Test the circumradius of a unit equilateral triangle is 1/sqrt(3)."""
        ball = solve_meb(EQUILATERAL)
        assert ball.radius == pytest.approx(1 / math.sqrt(3))

    def test_single_and_repeated_points(self):
        """Test degenerate sets give a zero-radius ball."""
        assert solve_meb(PointSet(points=[[4, -1]])).radius == 0.0
        ball = solve_meb(PointSet(points=[[1, 1]] * 5))
        assert ball.center == pytest.approx([1, 1])
        assert ball.radius == pytest.approx(0.0)

    def test_obtuse_triangle(self):
        """Test an obtuse triangle's ball is spanned by its longest side."""
        ball = solve_meb(PointSet(points=[[0, 0], [4, 0], [2, 0.5]]))
        assert ball.center == pytest.approx([2, 0])
        assert ball.radius == pytest.approx(2)

    def test_contains_all_points(self, rng):
        """Test every point lies in the returned ball."""
        S = PointSet(points=rng.normal(size=(200, 3)).tolist())
        ball = solve_meb(S)
        assert all(ball.contains(p, tol=1e-9) for p in S.points)

    def test_seed_independent(self, rng):
        """Test the shuffle seed does not change the ball."""
        S = PointSet(points=rng.uniform(-5, 5, size=(60, 2)).tolist())
        a = solve_meb(S, seed=0)
        b = solve_meb(S, seed=99)
        assert a.radius == pytest.approx(b.radius, rel=1e-9)
        assert a.center == pytest.approx(b.center, abs=1e-7)

    @pytest.mark.parametrize("dimension", [1, 2, 3])
    def test_matches_brute_force(self, rng, dimension):
        """Test agreement with subset enumeration on small random sets."""
        for _ in range(10):
            count = int(rng.integers(1, 10))
            S = PointSet(points=rng.uniform(-3, 3, size=(count, dimension)).tolist())
            fast = solve_meb(S)
            slow = brute_force_meb(S)
            assert fast.radius == pytest.approx(slow.radius, rel=1e-9, abs=1e-12)
            assert fast.center == pytest.approx(slow.center, abs=1e-6)

    def test_center_minimizes_objective(self, rng):
        """Test moving the centre never lowers max distance."""
        S = PointSet(points=rng.uniform(-2, 2, size=(30, 2)).tolist())
        ball = solve_meb(S)
        assert minimax_objective(S, ball.center) == pytest.approx(ball.radius)
        for delta in rng.normal(scale=1e-3, size=(20, 2)):
            assert minimax_objective(S, np.add(ball.center, delta)) >= ball.radius - 1e-12


class TestBruteForce:
    """Test the reference solver's guard rails."""

    def test_limit(self):
        """Test more than the limit of points is rejected."""
        S = PointSet(points=[[float(i), 0.0] for i in range(13)])
        with pytest.raises(InputError):
            brute_force_meb(S)

    def test_objective_dimension(self):
        """Test the objective rejects a centre of the wrong dimension."""
        with pytest.raises(InputError):
            minimax_objective(EQUILATERAL, [0, 0, 0])


class TestKKTCertificate:
    """Test the centre-in-hull optimality certificate."""

    def test_square(self):
        """Test all four corners are contacts and the centre is in their hull."""
        S = PointSet(points=[[0, 0], [1, 0], [0, 1], [1, 1]])
        certificate = kkt_certificate(S, solve_meb(S))
        assert len(certificate.contacts) == 4
        assert certificate.optimal()
        assert certificate.center_in_hull

    def test_equilateral(self):
        """Test the circumcentre lies in the triangle."""
        certificate = kkt_certificate(EQUILATERAL, solve_meb(EQUILATERAL))
        assert certificate.hull_distance == pytest.approx(0.0, abs=1e-9)
        assert certificate.center_in_hull

    def test_random_sets_optimal(self, rng):
        """Test computed balls pass the certificate."""
        for _ in range(5):
            S = PointSet(points=rng.normal(size=(40, 2)).tolist())
            certificate = kkt_certificate(S, solve_meb(S))
            assert certificate.optimal()
            assert certificate.center_in_hull

    def test_diameter_midpoint(self):
        """Test a two-contact ball whose centre is not a float midpoint is certified."""
        S = PointSet(points=[[0.1, 0.2], [0.7, 0.3], [0.4, 0.26]])
        certificate = kkt_certificate(S, solve_meb(S))
        assert certificate.center_in_hull
        assert sorted(certificate.support) == [[0.1, 0.2], [0.7, 0.3]]

    def test_three_dimensional_contacts(self):
        """Test the regular simplex corners of the 3-cube certify their ball."""
        S = PointSet(points=[[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1], [0.2, 0.1, 0]])
        certificate = kkt_certificate(S, solve_meb(S))
        assert certificate.center_in_hull
        assert len(certificate.contacts) == 4

    def test_suboptimal_ball_fails(self):
        """Test a ball with an off-centre contact set is not optimal."""
        from src.enclosing import Ball

        S = PointSet(points=[[0, 0], [2, 0]])
        certificate = kkt_certificate(S, Ball(center=[-1, 0], radius=3))
        assert certificate.contacts == [[2.0, 0.0]]
        assert not certificate.optimal()
        assert not certificate.center_in_hull
        assert certificate.support == []


class TestOracleAgreement:
    """Test the solver against subset enumeration with an exact certificate."""

    def test_two_hundred_instances(self):
        """Test 200 random instances in dimensions 2 and 3 agree and certify."""
        rng = np.random.default_rng(9)
        for trial in range(200):
            dimension = 2 + trial % 2
            count = int(rng.integers(2, 9))
            S = PointSet(points=rng.uniform(-5, 5, size=(count, dimension)).tolist())
            fast = solve_meb(S, seed=trial)
            slow = brute_force_meb(S)
            assert fast.radius == pytest.approx(slow.radius, rel=1e-9, abs=1e-9)
            assert fast.center == pytest.approx(slow.center, abs=1e-9)
            assert kkt_certificate(S, fast).center_in_hull, f"trial {trial}"
