"""
vadu: command-line entry point for the laboratory.

Every subcommand reads a JSON input file, writes CSV/JSON outputs and prints a
one-line summary. Exit codes: 0 success, 1 invalid input, 2 budget exhausted or
undecided, 3 numerical failure.
"""

import functools
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click
from pydantic import ValidationError
from rich.console import Console

from ..config import LabConfig, get_settings, load_config
from ..errors import LabError
from ..exports import (
    check_writable,
    read_json,
    write_basin_csv,
    write_flow_field_csv,
    write_json,
    write_net_csv,
    write_trajectory_csv,
)
from ..geometry import Tolerance
from ..logging_config import setup_logging

console = Console(soft_wrap=True, highlight=False)
err_console = Console(stderr=True, soft_wrap=True, highlight=False)

logger = logging.getLogger(__name__)


@dataclass
class RunContext:
    """Resolved global options shared by all subcommands."""

    config: LabConfig
    seed: int
    jobs: int

    @property
    def tol(self) -> Tolerance:
        geometry = self.config.geometry
        return Tolerance(eps=geometry.eps, solver_residual=geometry.solver_residual)


class FloatList(click.ParamType):
    """Comma-separated floats, e.g. "1.5,-2"."""

    name = "floats"

    def __init__(self, length: Optional[int] = None):
        self.length = length

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            numbers = [float(part) for part in str(value).split(",")]
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of numbers", param, ctx)
        if self.length is not None and len(numbers) != self.length:
            self.fail(f"expected {self.length} numbers, got {len(numbers)}", param, ctx)
        return numbers


def _summary(line: str) -> None:
    console.print(line, markup=False)


def _fail(message: str, code: int) -> None:
    err_console.print(f"Error: {message}", markup=False)
    sys.exit(code)


def _validation_message(e: ValidationError) -> str:
    first = e.errors()[0]
    field = ".".join(str(part) for part in first["loc"])
    return f"{field}: {first['msg']}" if field else first["msg"]


def guarded(fn):
    """Map laboratory errors to exit codes with a message naming the field."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LabError as e:
            _fail(str(e), e.exit_code)
        except ValidationError as e:
            _fail(_validation_message(e), 1)
        except OSError as e:
            _fail(str(e), 1)

    return wrapper


def _fmt(values) -> str:
    return "(" + ", ".join(repr(float(v)) for v in values) + ")"


pass_run = click.make_pass_decorator(RunContext)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging.")
@click.option("--jobs", "-j", type=int, default=None, help="Worker processes [env VADU_JOBS].")
@click.option("--seed", type=int, default=None, help="Seed for every random choice [env VADU_SEED].")
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    default=None,
    help="YAML defaults file [env VADU_CONFIG].",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, jobs: Optional[int], seed: Optional[int], config_path: Optional[Path]) -> None:
    """Computational laboratory for Douglas-Rachford dynamics, polytope-family
    cycles, enclosing balls, graph linkage and polytope unfoldings."""
    settings = get_settings()
    setup_logging("DEBUG" if verbose else settings.log_level)
    try:
        config = load_config(config_path or settings.config_path)
    except (FileNotFoundError, ValidationError) as e:
        _fail(str(e), 1)
    ctx.obj = RunContext(
        config=config,
        seed=settings.seed if seed is None else seed,
        jobs=max(1, settings.jobs if jobs is None else jobs),
    )


# ═══════════════════════════════════════════════════════════════════════
# Douglas-Rachford dynamics
# ═══════════════════════════════════════════════════════════════════════

PROBLEM_HELP = """PROBLEM is JSON {"A": SET, "B": SET, "lambda": 0.5} where SET is one of
{"kind": "line", "point", "direction"}, {"kind": "hyperplane", "normal", "offset"},
{"kind": "halfspace", "normal", "offset"} (normal.x >= offset),
{"kind": "sphere"|"ball", "center", "radius"}, {"kind": "ellipse", "a", "b"},
{"kind": "psphere", "p"}, {"kind": "vpolytope", "vertices"}."""


def _load_problem(path: Path, relaxation: Optional[float], default: float):
    """The --lambda flag wins over the file, the file over the configured default."""
    from ..dynamics import DRProblem

    data = read_json(path)
    if relaxation is not None:
        data["lambda"] = relaxation
    elif isinstance(data, dict):
        data.setdefault("lambda", default)
    return DRProblem.model_validate(data)


def _status_exit(status) -> None:
    from ..dynamics import TrajectoryStatus

    if status is TrajectoryStatus.BUDGET_EXHAUSTED:
        sys.exit(2)


@cli.command("dr-iterate", epilog=PROBLEM_HELP)
@click.argument("problem", type=click.Path(exists=True, path_type=Path))
@click.option("--x0", type=FloatList(), required=True, help="Start point, e.g. 1,2.")
@click.option("--lambda", "relaxation", type=float, default=None, help="Override the relaxation.")
@click.option("--stop-tol", type=float, default=None)
@click.option("--max-iter", type=int, default=None)
@click.option("--out", type=click.Path(path_type=Path), default="trajectory.csv", show_default=True,
              help='CSV "iter,x1,...,xn,residual".')
@pass_run
@guarded
def dr_iterate_cmd(run, problem, x0, relaxation, stop_tol, max_iter, out):
    """Iterate the relaxed Douglas-Rachford operator from X0."""
    from ..dynamics import dr_iterate

    check_writable(out, "--out")
    P = _load_problem(problem, relaxation, run.config.dynamics.relaxation)
    cfg = run.config.dynamics
    trajectory = dr_iterate(
        P,
        x0,
        stop_tol=stop_tol if stop_tol is not None else cfg.stop_tol,
        max_iter=max_iter if max_iter is not None else cfg.max_iter,
        tol=run.tol,
        divergence_bound=cfg.divergence_bound,
    )
    write_trajectory_csv(trajectory, out)
    line = f"status={trajectory.status.value} iterations={trajectory.iterations}"
    if trajectory.certificate is not None:
        line += f" shadow={_fmt(trajectory.certificate.shadow)}"
    _summary(line)
    _status_exit(trajectory.status)


@cli.command("dr-flow", epilog=PROBLEM_HELP)
@click.argument("problem", type=click.Path(exists=True, path_type=Path))
@click.option("--x0", type=FloatList(), required=True, help="Initial state.")
@click.option("--step-size", type=float, default=None)
@click.option("--t-max", type=float, default=None)
@click.option("--stop-tol", type=float, default=None, help="0 disables early stopping.")
@click.option("--out", type=click.Path(path_type=Path), default="flow_trajectory.csv", show_default=True)
@pass_run
@guarded
def dr_flow_cmd(run, problem, x0, step_size, t_max, stop_tol, out):
    """Integrate the continuous-time flow x' = R_B R_A x - x with RK4."""
    from ..dynamics import integrate_flow

    check_writable(out, "--out")
    P = _load_problem(problem, None, run.config.dynamics.relaxation)
    cfg = run.config.dynamics
    trajectory = integrate_flow(
        P,
        x0,
        step_size=step_size if step_size is not None else cfg.step_size,
        t_max=t_max if t_max is not None else cfg.t_max,
        stop_tol=stop_tol if stop_tol is not None else cfg.stop_tol,
        tol=run.tol,
        divergence_bound=cfg.divergence_bound,
    )
    write_trajectory_csv(trajectory, out)
    _summary(
        f"status={trajectory.status.value} steps={trajectory.iterations} "
        f"t={trajectory.times[-1]!r} x={_fmt(trajectory.final_point)}"
    )
    _status_exit(trajectory.status)


def _box(values):
    from ..dynamics import Box

    return Box(xmin=values[0], xmax=values[1], ymin=values[2], ymax=values[3])


@cli.command("dr-field", epilog=PROBLEM_HELP)
@click.argument("problem", type=click.Path(exists=True, path_type=Path))
@click.option("--box", "box_values", type=FloatList(4), required=True, help="xmin,xmax,ymin,ymax")
@click.option("--resolution", type=(int, int), default=(20, 20), show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default="flow_field.csv", show_default=True,
              help='CSV "x,y,vx,vy,vnx,vny".')
@pass_run
@guarded
def dr_field_cmd(run, problem, box_values, resolution, out):
    """Sample the flow vector field on a planar grid of cell centers."""
    from ..dynamics import export_flow_field

    check_writable(out, "--out")
    P = _load_problem(problem, None, run.config.dynamics.relaxation)
    grid = export_flow_field(P, _box(box_values), resolution, run.tol, run.jobs)
    write_flow_field_csv(grid, out)
    _summary(f"samples={len(grid.samples)} grid={grid.nx}x{grid.ny} out={out}")


@cli.command("dr-basin", epilog=PROBLEM_HELP)
@click.argument("problem", type=click.Path(exists=True, path_type=Path))
@click.option("--box", "box_values", type=FloatList(4), required=True, help="xmin,xmax,ymin,ymax")
@click.option("--resolution", type=(int, int), default=(20, 20), show_default=True)
@click.option("--lambda", "relaxation", type=float, default=None)
@click.option("--stop-tol", type=float, default=None)
@click.option("--max-iter", type=int, default=None)
@click.option("--out", type=click.Path(path_type=Path), default="basins.csv", show_default=True,
              help='CSV "x,y,label".')
@click.option("--attractors", type=click.Path(path_type=Path), default=None, help="Attractor table JSON.")
@pass_run
@guarded
def dr_basin_cmd(run, problem, box_values, resolution, relaxation, stop_tol, max_iter, out, attractors):
    """Label every grid start by the attractor its iteration reaches."""
    from ..dynamics import basin_grid

    check_writable(out, "--out")
    check_writable(attractors, "--attractors")
    cfg = run.config.dynamics
    stop = stop_tol if stop_tol is not None else cfg.stop_tol
    grid = basin_grid(
        _load_problem(problem, relaxation, cfg.relaxation),
        _box(box_values),
        resolution,
        stop_tol=stop,
        max_iter=max_iter if max_iter is not None else cfg.max_iter,
        tol=run.tol,
        cluster_radius=cfg.cluster_factor * stop,
        jobs=run.jobs,
    )
    write_basin_csv(grid, out)
    if attractors is not None:
        write_json({"attractors": grid.attractors, "counts": grid.counts}, attractors)
    counts = " ".join(f"{label}:{n}" for label, n in sorted(grid.counts.items()))
    _summary(f"attractors={len(grid.attractors)} counts {counts}")


# ═══════════════════════════════════════════════════════════════════════
# Polytope-family transform
# ═══════════════════════════════════════════════════════════════════════

FAMILY_HELP = 'FAMILY is JSON {"dimension": n, "polytopes": [[["p/q", ...], ...], ...]}.'


@cli.command("drt-cycle", epilog=FAMILY_HELP)
@click.argument("family", type=click.Path(exists=True, path_type=Path))
@click.option("--max-steps", type=int, default=None)
@click.option("--mode", type=click.Choice(["exact", "sampled"]), default="exact", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="CycleReport JSON with the orbit.")
@pass_run
@guarded
def drt_cycle_cmd(run, family, max_steps, mode, out):
    """Iterate the family transform until a family repeats."""
    from ..errors import BudgetExhaustedError
    from ..transform import FamilyDocument, TransformMode, detect_cycle

    check_writable(out, "--out")
    cfg = run.config.transform
    omega = FamilyDocument.model_validate(read_json(family)).to_family()
    try:
        report = detect_cycle(
            omega,
            max_steps=max_steps if max_steps is not None else cfg.max_steps,
            mode=TransformMode(mode),
            samples=cfg.sampled_directions,
            seed=run.seed,
        )
    except BudgetExhaustedError as e:
        if out is not None:
            write_json({"status": "budget-exhausted", "orbit": [d.model_dump(mode="json") for d in e.partial]}, out)
        raise
    if out is not None:
        write_json(report, out)
    _summary(report.summary())


@cli.command("drt-search")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--dimension", type=int, default=2, show_default=True)
@click.option("--min-members", type=int, default=1, show_default=True)
@click.option("--max-members", type=int, default=None)
@click.option("--min-vertices", type=int, default=1, show_default=True)
@click.option("--max-vertices", type=int, default=None)
@click.option("--coord-bound", type=int, default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--mode", type=click.Choice(["exact", "sampled"]), default="exact", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="SearchStatistics JSON.")
@pass_run
@guarded
def drt_search_cmd(run, trials, dimension, min_members, max_members, min_vertices, max_vertices,
                   coord_bound, max_steps, mode, out):
    """Run cycle detection on random integer families and tabulate periods."""
    from ..transform import FamilyGenerator, TransformMode, random_family_search

    check_writable(out, "--out")
    cfg = run.config.transform
    params = FamilyGenerator(
        dimension=dimension,
        min_members=min_members,
        max_members=max_members if max_members is not None else cfg.max_members,
        min_vertices=min_vertices,
        max_vertices=max_vertices if max_vertices is not None else cfg.max_vertices,
        coord_bound=coord_bound if coord_bound is not None else cfg.coord_bound,
    )
    stats = random_family_search(
        params,
        trials,
        max_steps=max_steps if max_steps is not None else cfg.max_steps,
        seed=run.seed,
        mode=TransformMode(mode),
        samples=cfg.sampled_directions,
        jobs=run.jobs,
    )
    if out is not None:
        write_json(stats, out)
    _summary(f"{stats.summary()} seed={run.seed}")


# ═══════════════════════════════════════════════════════════════════════
# Enclosing ball, linkage, unfolding, projections
# ═══════════════════════════════════════════════════════════════════════

@cli.command("meb")
@click.argument("points", type=click.Path(exists=True, path_type=Path))
@click.option("--brute-force", is_flag=True, help="Use the exhaustive oracle (at most 12 points).")
@click.option("--out", type=click.Path(path_type=Path), default=None, help='Ball JSON {"center", "radius"}.')
@pass_run
@guarded
def meb_cmd(run, points, brute_force, out):
    """Minimal enclosing ball of POINTS, JSON {"dimension": d, "points": [[...], ...]}."""
    from ..enclosing import PointSet, brute_force_meb, kkt_certificate, solve_meb

    check_writable(out, "--out")
    S = PointSet.model_validate(read_json(points))
    cfg = run.config.enclosing
    if brute_force:
        ball = brute_force_meb(S, limit=cfg.brute_force_limit)
    else:
        ball = solve_meb(S, seed=run.seed)
    certificate = kkt_certificate(S, ball, contact_tol=cfg.contact_tol)
    if out is not None:
        write_json(ball, out)
    _summary(
        f"center {_fmt(ball.center)} radius {ball.radius!r} "
        f"certified={certificate.center_in_hull} seed={run.seed}"
    )


@cli.command("klinked")
@click.argument("graph", type=click.Path(exists=True, path_type=Path))
@click.option("--k", "k", type=int, required=True, help="Number of terminal pairs.")
@click.option("--node-budget", type=int, default=None)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="LinkageResult JSON.")
@pass_run
@guarded
def klinked_cmd(run, graph, k, node_budget, out):
    """Decide k-linkage of GRAPH, JSON {"vertices": N, "edges": [[i, j], ...]}."""
    from ..linkage import Graph, is_k_linked

    check_writable(out, "--out")
    G = Graph.model_validate(read_json(graph))
    cfg = run.config.linkage
    result = is_k_linked(
        G,
        k,
        node_budget=node_budget if node_budget is not None else cfg.node_budget,
        pairing_cap=cfg.pairing_cap,
        jobs=run.jobs,
    )
    if out is not None:
        write_json(result, out)
    _summary(result.summary())


POLYTOPE_HELP = 'POLYTOPE is JSON {"vertices": [[x, y, z], ...], "faces": [[i, j, k, ...], ...]}.'


def _polytope(path: Optional[Path], builtin: Optional[str]):
    from ..errors import InputError
    from ..unfolding import Polytope3, builtin_polytope

    if (path is None) == (builtin is None):
        raise InputError("give either a polytope file or --builtin", field="polytope")
    if builtin is not None:
        return builtin_polytope(builtin)
    return Polytope3.model_validate(read_json(path))


BUILTIN_CHOICE = click.Choice(["tetrahedron", "cube", "octahedron", "truncated-tetrahedron"])


@cli.command("unfold", epilog=POLYTOPE_HELP)
@click.argument("polytope", type=click.Path(exists=True, path_type=Path), required=False)
@click.option("--builtin", type=BUILTIN_CHOICE, default=None)
@click.option("--tree", type=click.Path(exists=True, path_type=Path), default=None,
              help='CutTree JSON {"fold_edges": [[u, v], ...]}; default is the first tree.')
@click.option("--out", type=click.Path(path_type=Path), default="net.csv", show_default=True,
              help='CSV "face,vertex,x,y".')
@click.option("--json", "json_out", type=click.Path(path_type=Path), default=None, help="Net JSON.")
@pass_run
@guarded
def unfold_cmd(run, polytope, builtin, tree, out, json_out):
    """Develop a polytope along a cut tree and check the net for overlaps."""
    from ..unfolding import CutTree, check_overlap, iter_spanning_trees, unfold

    check_writable(out, "--out")
    check_writable(json_out, "--json")
    P = _polytope(polytope, builtin)
    T = CutTree.model_validate(read_json(tree)) if tree is not None else next(iter_spanning_trees(P))
    net = unfold(P, T)
    report = check_overlap(net, Tolerance(eps=run.config.unfolding.tol))
    write_net_csv(net, out)
    if json_out is not None:
        write_json({"net": net.model_dump(mode="json"), "overlap": report.model_dump(mode="json")}, json_out)
    _summary(f"faces={len(net.faces)} overlapping={report.overlapping} pairs={report.pairs}")


@cli.command("unfold-search", epilog=POLYTOPE_HELP)
@click.argument("polytope", type=click.Path(exists=True, path_type=Path), required=False)
@click.option("--builtin", type=BUILTIN_CHOICE, default=None)
@click.option("--strategy", type=click.Choice(["exhaustive", "random"]), default="exhaustive", show_default=True)
@click.option("--budget", type=int, default=None)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Search result JSON.")
@click.option("--net-csv", type=click.Path(path_type=Path), default=None,
              help="CSV of the first nonoverlapping net.")
@pass_run
@guarded
def unfold_search_cmd(run, polytope, builtin, strategy, budget, out, net_csv):
    """Search cut trees for a nonoverlapping net."""
    from ..unfolding import SearchStrategy, search_nonoverlapping

    check_writable(out, "--out")
    check_writable(net_csv, "--net-csv")
    cfg = run.config.unfolding
    result = search_nonoverlapping(
        _polytope(polytope, builtin),
        strategy=SearchStrategy(strategy),
        budget=budget if budget is not None else cfg.budget,
        seed=run.seed,
        tol=Tolerance(eps=cfg.tol),
        jobs=run.jobs,
    )
    if out is not None:
        write_json(result, out)
    if net_csv is not None and result.first_nonoverlapping is not None:
        write_net_csv(result.first_nonoverlapping, net_csv)
    _summary(result.summary())


@cli.command("project", epilog=PROBLEM_HELP)
@click.argument("set_file", type=click.Path(exists=True, path_type=Path))
@click.option("--x", "x", type=FloatList(), required=True, help="Point to project.")
@pass_run
@guarded
def project_cmd(run, set_file, x):
    """Nearest point of a single SET (see below) to X."""
    from ..projections import membership_residual, parse_set, project

    S = parse_set(read_json(set_file))
    result = project(S, x, run.tol)
    _summary(
        f"point={_fmt(result.point)} unique={result.unique} "
        f"residual={membership_residual(S, result.point)!r}"
    )


if __name__ == "__main__":
    cli()
