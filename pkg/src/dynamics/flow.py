"""
Continuous-time Douglas-Rachford flow.

The vector field is the rescaled small-relaxation limit

    V(x) = lim_{lambda -> 0+} (T_lambda(x) - x) / lambda = R_B(R_A(x)) - x

integrated with fixed-step classical RK4.
"""

import logging
import math
from functools import partial

import numpy as np

from ..errors import InputError
from ..geometry.vectors import DEFAULT_TOLERANCE, FloatVec, Tolerance, as_float_vec, check_same_dimension
from ..projections import reflect
from ..workers import map_ordered
from .douglas_rachford import DIVERGENCE_BOUND, shadow_certificate
from .schemas import Box, DRProblem, FlowFieldGrid, FlowSample, Trajectory, TrajectoryStatus

logger = logging.getLogger(__name__)


def flow_vector(P: DRProblem, x, tol: Tolerance = DEFAULT_TOLERANCE) -> FloatVec:
    """V(x) = R_B(R_A(x)) - x."""
    vec = as_float_vec(x)
    check_same_dimension(vec, P.dimension)
    return reflect(P.B, reflect(P.A, vec, tol), tol) - vec


def _rk4_step(P: DRProblem, x: np.ndarray, k1: np.ndarray, h: float, tol: Tolerance) -> np.ndarray:
    k2 = flow_vector(P, x + 0.5 * h * k1, tol)
    k3 = flow_vector(P, x + 0.5 * h * k2, tol)
    k4 = flow_vector(P, x + h * k3, tol)
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_flow(
    P: DRProblem,
    x0,
    step_size: float = 1e-2,
    t_max: float = 50.0,
    stop_tol: float = 1e-10,
    tol: Tolerance = DEFAULT_TOLERANCE,
    divergence_bound: float = DIVERGENCE_BOUND,
) -> Trajectory:
    """
    Integrate dx/dt = V(x) from x0 up to t_max with fixed-step RK4.

    Args:
        P: Problem (its relaxation is irrelevant for the flow)
        x0: Initial state
        step_size: RK4 step h; the last step is shortened to land on t_max
        t_max: Final time
        stop_tol: Stop early once |V(x)| < stop_tol; 0 disables early stopping
        tol: Projection tolerance
        divergence_bound: Norm beyond which the run is declared diverged

    Returns:
        Trajectory whose residuals are the flow speeds |V(x_n)|
    """
    if step_size <= 0:
        raise InputError("must be positive", field="step_size")
    if t_max <= 0:
        raise InputError("must be positive", field="t_max")
    if stop_tol < 0:
        raise InputError("must be nonnegative", field="stop_tol")
    x = as_float_vec(x0, name="x0")
    check_same_dimension(x, P.dimension, name="x0")

    points = [x.tolist()]
    times = [0.0]
    residuals: list[float] = []
    status = TrajectoryStatus.BUDGET_EXHAUSTED
    steps = 0

    v = flow_vector(P, x, tol)
    if float(np.linalg.norm(v)) < stop_tol:
        status = TrajectoryStatus.CONVERGED
    else:
        n_steps = max(1, math.ceil(t_max / step_size - 1e-9))
        t = 0.0
        for steps in range(1, n_steps + 1):
            h = min(step_size, t_max - t)
            try:
                x_new = _rk4_step(P, x, v, h, tol)
            except InputError:
                status = TrajectoryStatus.DIVERGED
                break
            if not np.all(np.isfinite(x_new)) or float(np.linalg.norm(x_new)) > divergence_bound:
                status = TrajectoryStatus.DIVERGED
                break

            x = x_new
            t = t_max if steps == n_steps else steps * step_size
            v = flow_vector(P, x, tol)
            speed = float(np.linalg.norm(v))
            points.append(x.tolist())
            times.append(t)
            residuals.append(speed)
            if speed < stop_tol:
                status = TrajectoryStatus.CONVERGED
                break

    certificate = shadow_certificate(P, x, tol) if status is TrajectoryStatus.CONVERGED else None
    logger.debug(f"integrate_flow finished: {status.value} after {steps} steps")
    return Trajectory(
        points=points,
        residuals=residuals,
        times=times,
        status=status,
        iterations=steps,
        certificate=certificate,
    )


def _flow_sample(point: tuple[float, float], P: DRProblem, tol: Tolerance) -> FlowSample:
    v = flow_vector(P, point, tol)
    norm = float(np.linalg.norm(v))
    unit = v / norm if norm > 0.0 else np.zeros(2)
    return FlowSample(
        x=point[0],
        y=point[1],
        vx=float(v[0]),
        vy=float(v[1]),
        vnx=float(unit[0]),
        vny=float(unit[1]),
    )


def export_flow_field(
    P: DRProblem,
    box: Box,
    resolution: tuple[int, int],
    tol: Tolerance = DEFAULT_TOLERANCE,
    jobs: int = 1,
) -> FlowFieldGrid:
    """
    Evaluate the flow at every cell center of a planar grid.

    Raises:
        InputError: For non-planar problems or empty resolutions
    """
    if P.dimension != 2:
        raise InputError("flow fields are exported for planar problems only", field="A")
    nx, ny = resolution
    if nx < 1 or ny < 1:
        raise InputError("must be positive", field="resolution")

    samples = map_ordered(partial(_flow_sample, P=P, tol=tol), box.cell_centers(nx, ny), jobs)
    logger.info(f"Exported flow field on {nx}x{ny} grid")
    return FlowFieldGrid(box=box, nx=nx, ny=ny, samples=samples)
