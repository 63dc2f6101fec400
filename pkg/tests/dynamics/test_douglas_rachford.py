"""
Tests for the discrete Douglas-Rachford iteration.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.dynamics import DRProblem, TrajectoryStatus, dr_iterate, dr_step, flow_vector, shadow_certificate
from src.errors import InputError
from src.projections import AffineLine, Ellipse, HalfSpace, Sphere

X_AXIS = AffineLine(point=[0, 0], direction=[1, 0])


class TestDRProblem:
    """Test problem validation."""

    def test_lambda_alias(self):
        """Test "lambda" populates the relaxation."""
        P = DRProblem.model_validate(
            {"A": X_AXIS.model_dump(), "B": {"kind": "sphere", "center": [0, 0], "radius": 1}, "lambda": 0.25}
        )
        assert P.relaxation == 0.25
        assert isinstance(P.B, Sphere)

    @pytest.mark.parametrize("relaxation", [0.0, 1.5])
    def test_lambda_range(self, relaxation):
        """Test lambda must lie in (0, 1]."""
        with pytest.raises(ValidationError):
            DRProblem(A=X_AXIS, B=X_AXIS, relaxation=relaxation)

    def test_dimension_mismatch(self):
        """Test A and B must share a dimension."""
        with pytest.raises(ValidationError):
            DRProblem(A=X_AXIS, B=Sphere(center=[0, 0, 0], radius=1))


class TestDRStep:
    """Test single applications of the operator."""

    def test_axes_step(self, axes_problem):
        """Test one step from (1, 1) lands on the origin."""
        assert dr_step(axes_problem, [1, 1]) == pytest.approx([0, 0])

    def test_step_equals_relaxed_flow(self, circle_line_problem, rng):
        """Test T(x) - x == lambda * V(x)."""
        P = circle_line_problem.model_copy(update={"relaxation": 0.3})
        for x in rng.uniform(-3, 3, size=(20, 2)):
            lhs = np.linalg.norm(dr_step(P, x) - x)
            rhs = 0.3 * np.linalg.norm(flow_vector(P, x))
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_wrong_dimension(self, axes_problem):
        """Test a 3-D point is rejected."""
        with pytest.raises(InputError):
            dr_step(axes_problem, [1, 1, 1])


class TestDRIterate:
    """Test full iterations and their terminal status."""

    def test_crossing_lines_converge(self):
        """Test two crossing lines converge to a fixed point with feasible shadow."""
        P = DRProblem(A=X_AXIS, B=AffineLine(point=[0, 0], direction=[1, 2]))
        trajectory = dr_iterate(P, [3, 7], stop_tol=1e-12, max_iter=10_000)
        assert trajectory.status is TrajectoryStatus.CONVERGED
        assert trajectory.certificate.shadow == pytest.approx([0, 0], abs=1e-9)
        assert trajectory.certificate.feasible(1e-9)

    def test_equal_sets_fixed(self):
        """Test A == B fixes every point and the shadow is P_A(x0)."""
        P = DRProblem(A=X_AXIS, B=X_AXIS)
        trajectory = dr_iterate(P, [5, 2])
        assert trajectory.status is TrajectoryStatus.CONVERGED
        assert trajectory.iterations == 1
        assert trajectory.final_point == pytest.approx([5, 2])
        assert trajectory.certificate.shadow == pytest.approx([5, 0])

    def test_residuals_align_with_points(self, circle_line_problem):
        """Test residual n is the step from point n to point n + 1."""
        trajectory = dr_iterate(circle_line_problem, [0.3, 0.8], max_iter=50)
        assert len(trajectory.residuals) == len(trajectory.points) - 1
        for n, residual in enumerate(trajectory.residuals):
            step = np.subtract(trajectory.points[n + 1], trajectory.points[n])
            assert residual == pytest.approx(float(np.linalg.norm(step)))

    def test_budget_exhausted(self):
        """Test a one-step budget ends without a certificate."""
        P = DRProblem(A=X_AXIS, B=AffineLine(point=[0, 0], direction=[1, 2]))
        trajectory = dr_iterate(P, [3, 7], max_iter=1)
        assert trajectory.status is TrajectoryStatus.BUDGET_EXHAUSTED
        assert trajectory.iterations == 1
        assert trajectory.certificate is None

    def test_parallel_lines_diverge(self):
        """Test disjoint parallel lines drift past the divergence bound."""
        P = DRProblem(A=X_AXIS, B=AffineLine(point=[0, 1], direction=[1, 0]))
        trajectory = dr_iterate(P, [0, 0], max_iter=1000, divergence_bound=100.0)
        assert trajectory.status is TrajectoryStatus.DIVERGED
        assert trajectory.iterations < 1000

    def test_without_recording(self, circle_line_problem):
        """Test record=False keeps only the start and the terminal state."""
        full = dr_iterate(circle_line_problem, [0.3, 0.8], max_iter=200)
        brief = dr_iterate(circle_line_problem, [0.3, 0.8], max_iter=200, record=False)
        assert len(brief.points) == 2
        assert brief.final_point == full.final_point
        assert brief.status == full.status

    def test_deterministic(self):
        """Test two runs on an ellipse are identical."""
        P = DRProblem(A=Ellipse(a=2, b=1), B=AffineLine(point=[0, 0.5], direction=[1, 0]))
        first = dr_iterate(P, [0.1, -2.0], max_iter=300)
        second = dr_iterate(P, [0.1, -2.0], max_iter=300)
        assert first.points == second.points

    @pytest.mark.parametrize("kwargs", [{"stop_tol": 0.0}, {"max_iter": 0}])
    def test_invalid_budget(self, axes_problem, kwargs):
        """Test nonpositive stop_tol or max_iter raise InputError."""
        with pytest.raises(InputError):
            dr_iterate(axes_problem, [1, 1], **kwargs)


class TestShadowCertificate:
    """Test the shadow certificate of terminal states."""

    def test_circle_line_intersection(self, circle_line_problem):
        """Test the shadow of a fixed point lies on both the circle and the line."""
        trajectory = dr_iterate(circle_line_problem, [0.5, 0.9], stop_tol=1e-12, max_iter=10_000)
        assert trajectory.status is TrajectoryStatus.CONVERGED
        certificate = trajectory.certificate
        assert abs(certificate.shadow[0]) == pytest.approx(1.0, abs=1e-8)
        assert certificate.feasible(1e-8)

    def test_infeasible_shadow(self, circle_line_problem):
        """Test a point off both sets reports nonzero residuals."""
        certificate = shadow_certificate(circle_line_problem, [0, 3])
        assert certificate.shadow == pytest.approx([0, 1])
        assert certificate.residual_b == pytest.approx(1)
        assert not certificate.feasible(1e-6)


class TestConvergenceRates:
    """Test convergence over families of random instances."""

    def test_line_halfspace_pairs(self):
        """Test 100 intersecting line and half-plane pairs reach a feasible shadow."""
        rng = np.random.default_rng(31)
        for _ in range(100):
            q = rng.uniform(-2, 2, 2)
            angle = rng.uniform(0, np.pi)
            normal = rng.normal(size=2)
            P = DRProblem(
                A=AffineLine(point=q.tolist(), direction=[np.cos(angle), np.sin(angle)]),
                B=HalfSpace(normal=normal.tolist(), offset=float(normal @ q - rng.uniform(0, 1))),
                relaxation=0.5,
            )
            trajectory = dr_iterate(P, rng.uniform(-5, 5, 2), max_iter=10_000)
            assert trajectory.status is TrajectoryStatus.CONVERGED
            assert trajectory.certificate.feasible(1e-6)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_circle_secant_local(self, sign):
        """Test starts within 0.1 of a circle and secant intersection almost always reach it."""
        P = DRProblem(A=Sphere(center=[0, 0], radius=1), B=AffineLine(point=[0, 0.5], direction=[1, 0]))
        target = np.array([sign * np.sqrt(3) / 2, 0.5])
        rng = np.random.default_rng(32)
        hits = 0
        for _ in range(100):
            offset = rng.normal(size=2)
            offset *= 0.1 * np.sqrt(rng.uniform()) / np.linalg.norm(offset)
            trajectory = dr_iterate(P, target + offset, max_iter=10_000)
            if (
                trajectory.status is TrajectoryStatus.CONVERGED
                and trajectory.certificate.feasible(1e-6)
                and np.linalg.norm(np.asarray(trajectory.certificate.shadow) - target) < 1e-6
            ):
                hits += 1
        assert hits >= 95
