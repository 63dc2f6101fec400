"""
CSV and JSON output files.

Floats are written with repr, the shortest string that parses back to the same
double, so every CSV re-imports bit-exactly. JSON goes through pydantic's json
mode with sorted keys for byte-stable files.
"""

import csv
import json
import logging
import os
from pathlib import Path
from typing import Any, List, Optional, Union

from pydantic import BaseModel

from .dynamics import BasinCell, BasinGrid, FlowFieldGrid, FlowSample, Trajectory
from .errors import InputError
from .unfolding import Net

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FLOW_HEADER = ["x", "y", "vx", "vy", "vnx", "vny"]
BASIN_HEADER = ["x", "y", "label"]
NET_HEADER = ["face", "vertex", "x", "y"]


def check_writable(path: Optional[PathLike], field: str) -> None:
    """
    Fail before any work when path cannot be created or overwritten.

    Missing parent directories are fine as long as the nearest existing ancestor
    is a writable directory.

    Raises:
        InputError: Naming field when the path is a directory or not writable
    """
    if path is None:
        return
    path = Path(path)
    if path.is_dir():
        raise InputError(f"{path} is a directory", field=field)
    if path.exists():
        if not os.access(path, os.W_OK):
            raise InputError(f"{path} is not writable", field=field)
        return
    ancestor = path.parent.absolute()
    while not ancestor.exists():
        ancestor = ancestor.parent
    if not ancestor.is_dir() or not os.access(ancestor, os.W_OK | os.X_OK):
        raise InputError(f"cannot create {path}: {ancestor} is not a writable directory", field=field)


def _write_rows(path: PathLike, header: List[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug(f"Wrote {path}")
    return path


def _read_rows(path: PathLike, header: List[str]) -> List[List[str]]:
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        found = next(reader, None)
        if found != header:
            raise InputError(f"{path}: expected header {','.join(header)}, got {found}")
        return list(reader)


def trajectory_header(dimension: int) -> List[str]:
    return ["iter", *(f"x{i + 1}" for i in range(dimension)), "residual"]


def write_trajectory_csv(trajectory: Trajectory, path: PathLike) -> Path:
    """One row per recorded state; the start row has an empty residual."""
    dimension = len(trajectory.points[0])
    rows = []
    for n, point in enumerate(trajectory.points):
        residual = repr(trajectory.residuals[n - 1]) if n > 0 else ""
        rows.append([str(n), *(repr(c) for c in point), residual])
    return _write_rows(path, trajectory_header(dimension), rows)


def read_trajectory_csv(path: PathLike, dimension: int) -> Trajectory:
    rows = _read_rows(path, trajectory_header(dimension))
    points = [[float(c) for c in row[1:-1]] for row in rows]
    residuals = [float(row[-1]) for row in rows[1:]]
    return Trajectory(points=points, residuals=residuals, iterations=len(residuals))


def write_flow_field_csv(grid: FlowFieldGrid, path: PathLike) -> Path:
    rows = [[repr(getattr(s, name)) for name in FLOW_HEADER] for s in grid.samples]
    return _write_rows(path, FLOW_HEADER, rows)


def read_flow_field_csv(path: PathLike) -> List[FlowSample]:
    return [
        FlowSample(**{name: float(value) for name, value in zip(FLOW_HEADER, row)})
        for row in _read_rows(path, FLOW_HEADER)
    ]


def write_basin_csv(grid: BasinGrid, path: PathLike) -> Path:
    rows = [[repr(c.x), repr(c.y), c.label] for c in grid.cells]
    return _write_rows(path, BASIN_HEADER, rows)


def read_basin_csv(path: PathLike) -> List[BasinCell]:
    return [BasinCell(x=float(x), y=float(y), label=label) for x, y, label in _read_rows(path, BASIN_HEADER)]


def write_net_csv(net: Net, path: PathLike) -> Path:
    """Placed polygons, one row per face vertex, for external plotting."""
    rows = [
        [str(face.face), str(k), repr(x), repr(y)]
        for face in net.faces
        for k, (x, y) in enumerate(face.polygon)
    ]
    return _write_rows(path, NET_HEADER, rows)


def to_json_text(document: Union[BaseModel, Any]) -> str:
    data = document.model_dump(mode="json") if isinstance(document, BaseModel) else document
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(document: Union[BaseModel, Any], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json_text(document), encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def read_json(path: PathLike) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e
