"""Douglas-Rachford iteration, continuous-time flow and basin sweeps."""

from .basins import NONCONVERGENT, basin_grid
from .douglas_rachford import dr_iterate, dr_step, shadow_certificate
from .flow import export_flow_field, flow_vector, integrate_flow
from .schemas import (
    BasinCell,
    BasinGrid,
    Box,
    DRProblem,
    FlowFieldGrid,
    FlowSample,
    ShadowCertificate,
    Trajectory,
    TrajectoryStatus,
)

__all__ = [
    "DRProblem",
    "Trajectory",
    "TrajectoryStatus",
    "ShadowCertificate",
    "Box",
    "FlowSample",
    "FlowFieldGrid",
    "BasinCell",
    "BasinGrid",
    "NONCONVERGENT",
    "dr_step",
    "dr_iterate",
    "shadow_certificate",
    "flow_vector",
    "integrate_flow",
    "export_flow_field",
    "basin_grid",
]
