"""
Basin-of-attraction sweeps for the discrete iteration.

Every grid start is iterated independently; terminal shadows are then clustered in
row-major cell order, so labels do not depend on how the cells were scheduled.
"""

import logging
from collections import Counter
from functools import partial
from typing import Optional

import numpy as np

from ..errors import InputError, NumericalError
from ..geometry.vectors import DEFAULT_TOLERANCE, Tolerance
from ..workers import map_ordered
from .douglas_rachford import dr_iterate
from .schemas import BasinCell, BasinGrid, Box, DRProblem, TrajectoryStatus

logger = logging.getLogger(__name__)

NONCONVERGENT = "nonconvergent"


def _terminal_shadow(
    start: tuple[float, float],
    P: DRProblem,
    stop_tol: float,
    max_iter: int,
    tol: Tolerance,
) -> Optional[list[float]]:
    try:
        trajectory = dr_iterate(P, start, stop_tol=stop_tol, max_iter=max_iter, tol=tol, record=False)
    except NumericalError as e:
        logger.warning(f"Start {start} labelled {NONCONVERGENT}: {e}")
        return None
    if trajectory.status is not TrajectoryStatus.CONVERGED or trajectory.certificate is None:
        return None
    return trajectory.certificate.shadow


def basin_grid(
    P: DRProblem,
    box: Box,
    resolution: tuple[int, int],
    stop_tol: float = 1e-10,
    max_iter: int = 10_000,
    tol: Tolerance = DEFAULT_TOLERANCE,
    cluster_radius: Optional[float] = None,
    jobs: int = 1,
) -> BasinGrid:
    """
    Label each cell-center start by the attractor its iteration reaches.

    Args:
        P: Planar problem
        box: Sampling window
        resolution: (nx, ny), at least 2 per axis
        stop_tol: Per-run stopping tolerance
        max_iter: Per-run iteration budget
        tol: Projection tolerance
        cluster_radius: Shadows closer than this share a label (default 100 * stop_tol)
        jobs: Worker processes

    Returns:
        Labels "A0", "A1", ... in order of first appearance, or "nonconvergent"
    """
    if P.dimension != 2:
        raise InputError("basin sweeps need a planar problem", field="A")
    nx, ny = resolution
    if nx < 2 or ny < 2:
        raise InputError("need at least 2 cells per axis", field="resolution")
    radius = 100.0 * stop_tol if cluster_radius is None else cluster_radius

    starts = box.cell_centers(nx, ny)
    worker = partial(_terminal_shadow, P=P, stop_tol=stop_tol, max_iter=max_iter, tol=tol)
    shadows = map_ordered(worker, starts, jobs)

    centers: list[np.ndarray] = []
    attractors: dict[str, list[float]] = {}
    cells = []
    for (x, y), shadow in zip(starts, shadows):
        label = NONCONVERGENT
        if shadow is not None:
            point = np.asarray(shadow)
            for index, center in enumerate(centers):
                if float(np.linalg.norm(point - center)) <= radius:
                    label = f"A{index}"
                    break
            else:
                label = f"A{len(centers)}"
                centers.append(point)
                attractors[label] = shadow
        cells.append(BasinCell(x=x, y=y, label=label))

    counts = dict(Counter(cell.label for cell in cells))
    logger.info(f"Basin sweep {nx}x{ny}: {len(attractors)} attractors, counts {counts}")
    return BasinGrid(box=box, nx=nx, ny=ny, cells=cells, attractors=attractors, counts=counts)
