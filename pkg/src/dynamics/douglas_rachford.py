"""
Discrete Douglas-Rachford iteration.

    T(x) = lambda * R_B(R_A(x)) + (1 - lambda) * x,    R_C = 2 P_C - Id

Projections use the deterministic selections of the projections package, so the
iteration is reproducible on nonconvex sets too.
"""

import logging
from typing import Optional

import numpy as np

from ..errors import InputError
from ..geometry.vectors import DEFAULT_TOLERANCE, FloatVec, Tolerance, as_float_vec, check_same_dimension
from ..projections import membership_residual, project, reflect
from .schemas import DRProblem, ShadowCertificate, Trajectory, TrajectoryStatus

logger = logging.getLogger(__name__)

DIVERGENCE_BOUND = 1e8


def dr_step(P: DRProblem, x, tol: Tolerance = DEFAULT_TOLERANCE) -> FloatVec:
    """One application of the relaxed Douglas-Rachford operator."""
    vec = as_float_vec(x)
    check_same_dimension(vec, P.dimension)
    reflected = reflect(P.B, reflect(P.A, vec, tol), tol)
    return P.relaxation * reflected + (1.0 - P.relaxation) * vec


def shadow_certificate(P: DRProblem, x, tol: Tolerance = DEFAULT_TOLERANCE) -> ShadowCertificate:
    """Shadow P_A(x) with its membership residuals against A and B."""
    result = project(P.A, x, tol)
    return ShadowCertificate(
        shadow=result.point.tolist(),
        residual_a=membership_residual(P.A, result.point),
        residual_b=membership_residual(P.B, result.point),
        unique=result.unique,
    )


def _is_diverged(x: np.ndarray, bound: float) -> bool:
    return not np.all(np.isfinite(x)) or float(np.linalg.norm(x)) > bound


def dr_iterate(
    P: DRProblem,
    x0,
    stop_tol: float = 1e-10,
    max_iter: int = 10_000,
    tol: Tolerance = DEFAULT_TOLERANCE,
    record: bool = True,
    divergence_bound: float = DIVERGENCE_BOUND,
) -> Trajectory:
    """
    Iterate dr_step until the step length drops below stop_tol.

    Args:
        P: Problem
        x0: Starting point
        stop_tol: Stop when |x_n - x_{n-1}| < stop_tol
        max_iter: Iteration budget
        tol: Projection tolerance
        record: Keep every iterate; otherwise only the start and the terminal state
        divergence_bound: Norm beyond which the run is declared diverged

    Returns:
        Trajectory with status and, on convergence, the shadow certificate

    Raises:
        InputError: On invalid budgets or a starting point of the wrong dimension
    """
    if stop_tol <= 0:
        raise InputError("must be positive", field="stop_tol")
    if max_iter < 1:
        raise InputError("must be at least 1", field="max_iter")
    x = as_float_vec(x0, name="x0")
    check_same_dimension(x, P.dimension, name="x0")

    points = [x.tolist()]
    residuals: list[float] = []
    status = TrajectoryStatus.BUDGET_EXHAUSTED
    iterations = 0

    for iterations in range(1, max_iter + 1):
        try:
            nxt = dr_step(P, x, tol)
        except InputError:
            # A non-finite reflection is a divergence of the iteration.
            status = TrajectoryStatus.DIVERGED
            break
        if _is_diverged(nxt, divergence_bound):
            status = TrajectoryStatus.DIVERGED
            break

        residual = float(np.linalg.norm(nxt - x))
        x = nxt
        if record:
            points.append(x.tolist())
            residuals.append(residual)
        else:
            points[1:] = [x.tolist()]
            residuals[:] = [residual]

        if residual < stop_tol:
            status = TrajectoryStatus.CONVERGED
            break

    certificate: Optional[ShadowCertificate] = None
    if status is TrajectoryStatus.CONVERGED:
        certificate = shadow_certificate(P, x, tol)

    logger.debug(f"dr_iterate finished: {status.value} after {iterations} iterations")
    return Trajectory(
        points=points,
        residuals=residuals,
        status=status,
        iterations=iterations,
        certificate=certificate,
    )
