"""
Tests for the continuous-time flow and flow-field export.
"""

import math

import numpy as np
import pytest

from src.dynamics import Box, TrajectoryStatus, export_flow_field, flow_vector, integrate_flow
from src.errors import InputError


def _flow_error(problem, h):
    """Endpoint error at t = 1 against the exact solution x0 * exp(-2t)."""
    trajectory = integrate_flow(problem, [1.0, 0.5], step_size=h, t_max=1.0, stop_tol=0.0)
    exact = np.array([1.0, 0.5]) * math.exp(-2.0)
    return float(np.linalg.norm(np.array(trajectory.final_point) - exact))


class TestFlowVector:
    """Test V(x) = R_B(R_A(x)) - x."""

    def test_axes(self, axes_problem):
        """Test V(1, 1) == (-2, -2) for the coordinate axes."""
        assert flow_vector(axes_problem, [1, 1]) == pytest.approx([-2, -2])

    def test_vanishes_at_solution(self, circle_line_problem):
        """Test V vanishes at an intersection point."""
        assert flow_vector(circle_line_problem, [1, 0]) == pytest.approx([0, 0], abs=1e-12)


class TestIntegrateFlow:
    """Test fixed-step RK4 integration."""

    def test_fourth_order(self, axes_problem):
        """Test halving the step divides the error by about sixteen."""
        ratio = _flow_error(axes_problem, 0.1) / _flow_error(axes_problem, 0.05)
        assert 8.0 <= ratio <= 32.0

    def test_times_land_on_t_max(self, axes_problem):
        """Test the last step is shortened to end exactly at t_max."""
        trajectory = integrate_flow(axes_problem, [1, 1], step_size=0.3, t_max=1.0, stop_tol=0.0)
        assert trajectory.times[0] == 0.0
        assert trajectory.times[-1] == 1.0
        assert len(trajectory.times) == len(trajectory.points) == 5

    def test_early_stop(self, axes_problem):
        """Test integration stops once the flow speed drops below stop_tol."""
        trajectory = integrate_flow(axes_problem, [1, 1], step_size=0.1, t_max=100.0, stop_tol=1e-8)
        assert trajectory.status is TrajectoryStatus.CONVERGED
        assert trajectory.times[-1] < 100.0
        assert trajectory.certificate.shadow == pytest.approx([0, 0], abs=1e-8)

    def test_start_at_rest(self, axes_problem):
        """Test a start at the solution converges without stepping."""
        trajectory = integrate_flow(axes_problem, [0, 0])
        assert trajectory.status is TrajectoryStatus.CONVERGED
        assert trajectory.iterations == 0
        assert trajectory.points == [[0.0, 0.0]]

    def test_budget_exhausted(self, axes_problem):
        """Test a short horizon ends with budget-exhausted."""
        trajectory = integrate_flow(axes_problem, [1, 1], step_size=0.1, t_max=0.5)
        assert trajectory.status is TrajectoryStatus.BUDGET_EXHAUSTED
        assert trajectory.certificate is None

    def test_circle_line_reaches_intersection(self, circle_line_problem):
        """Test the flow from (0.5, 0.9) settles on a feasible point."""
        trajectory = integrate_flow(circle_line_problem, [0.5, 0.9], step_size=0.01, t_max=50.0)
        assert trajectory.status is TrajectoryStatus.CONVERGED
        assert trajectory.certificate.feasible(1e-6)

    @pytest.mark.parametrize("kwargs", [{"step_size": 0.0}, {"t_max": -1.0}, {"stop_tol": -1.0}])
    def test_invalid_parameters(self, axes_problem, kwargs):
        """Test nonpositive step or horizon raise InputError."""
        with pytest.raises(InputError):
            integrate_flow(axes_problem, [1, 1], **kwargs)


class TestFlowField:
    """Test planar flow-field export."""

    BOX = Box(xmin=-1, xmax=1, ymin=-2, ymax=2)

    def test_grid_order(self, axes_problem):
        """Test samples are cell centers with the x index outer."""
        grid = export_flow_field(axes_problem, self.BOX, (2, 4))
        assert len(grid.samples) == 8
        first = grid.vector(0, 0)
        assert (first.x, first.y) == pytest.approx((-0.5, -1.5))
        last = grid.vector(1, 3)
        assert (last.x, last.y) == pytest.approx((0.5, 1.5))
        assert grid.vector(0, 1).y == pytest.approx(-0.5)

    def test_vectors(self, axes_problem):
        """Test raw vectors are -2x and normalized vectors have unit length."""
        grid = export_flow_field(axes_problem, self.BOX, (3, 3))
        for s in grid.samples:
            assert (s.vx, s.vy) == pytest.approx((-2 * s.x, -2 * s.y))
            if s.vx or s.vy:
                assert math.hypot(s.vnx, s.vny) == pytest.approx(1.0)
            else:
                assert (s.vnx, s.vny) == (0.0, 0.0)

    def test_parallel_matches_serial(self, circle_line_problem):
        """Test worker processes return the same field."""
        serial = export_flow_field(circle_line_problem, self.BOX, (4, 4))
        parallel = export_flow_field(circle_line_problem, self.BOX, (4, 4), jobs=2)
        assert serial == parallel

    def test_requires_planar(self):
        """Test 3-D problems are rejected."""
        from src.dynamics import DRProblem
        from src.projections import Ball

        P = DRProblem(A=Ball(center=[0, 0, 0], radius=1), B=Ball(center=[1, 0, 0], radius=1))
        with pytest.raises(InputError):
            export_flow_field(P, self.BOX, (2, 2))
