"""
Shared pytest fixtures for the laboratory test suite.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Ensure project root is in sys.path so `src` is importable
_PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(_PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(_PROJECT_ROOT))


# ─── Numerics ─────────────────────────────────────────────────────────────────

@pytest.fixture
def tol():
    """Default tolerance policy."""
    from src.geometry import DEFAULT_TOLERANCE
    return DEFAULT_TOLERANCE


@pytest.fixture
def rng():
    """Seeded generator so randomized tests are reproducible."""
    return np.random.default_rng(20180701)


# ─── Dynamics problems ────────────────────────────────────────────────────────

@pytest.fixture
def axes_problem():
    """A = x-axis, B = y-axis, lambda = 1/2."""
    from src.dynamics import DRProblem
    from src.projections import AffineLine
    return DRProblem(
        A=AffineLine(point=[0.0, 0.0], direction=[1.0, 0.0]),
        B=AffineLine(point=[0.0, 0.0], direction=[0.0, 1.0]),
    )


@pytest.fixture
def circle_line_problem():
    """Unit circle and the x-axis, lambda = 1/2."""
    from src.dynamics import DRProblem
    from src.projections import AffineLine, Sphere
    return DRProblem(
        A=Sphere(center=[0.0, 0.0], radius=1.0),
        B=AffineLine(point=[0.0, 0.0], direction=[1.0, 0.0]),
    )


# ─── Polytopes and graphs ─────────────────────────────────────────────────────

@pytest.fixture
def tetrahedron():
    from src.unfolding import builtin_polytope
    return builtin_polytope("tetrahedron")


@pytest.fixture
def cube():
    from src.unfolding import builtin_polytope
    return builtin_polytope("cube")


@pytest.fixture
def truncated_tetrahedron():
    from src.unfolding import builtin_polytope
    return builtin_polytope("truncated-tetrahedron")


@pytest.fixture
def square_cycle():
    """C4: 0-1-2-3-0."""
    from src.linkage import Graph
    return Graph.cycle(4)


@pytest.fixture
def unit_square_family():
    from src.transform import Family
    return Family.from_point_lists([[(0, 0), (1, 0), (1, 1), (0, 1)]])
