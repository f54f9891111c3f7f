import logging
from typing import Sequence

import click

from data_io import METHOD_NAMES, PROBLEM_NAMES, load_run_spec, write_trace_csv
from errors import SolverError
from harness import EXPERIMENTS, ExperimentParams, build_problem, reproduce_experiment
from helpers import format_experiment_report, format_summary, return_methods
from solvers import register_all_methods
from solvers.registry import MethodSettings, dispatch, get_method
from solvers.types import RunStatus

logger = logging.getLogger(__name__)

EXIT_USAGE = 64
EXIT_CODES = {
    RunStatus.CONVERGED: 0,
    RunStatus.MAX_ITERS: 2,
    RunStatus.LINE_SEARCH_STALLED: 3,
    RunStatus.SINGULAR_SYSTEM: 3,
}


def _load_config(ctx: click.Context, param: click.Parameter, value: str | None) -> str | None:
    # Eager: file values become defaults, explicit flags still win.
    if value is None:
        return None
    try:
        spec = load_run_spec(value)
    except (ValueError, OSError) as exc:
        raise click.BadParameter(str(exc), ctx=ctx, param=param) from exc
    ctx.default_map = {**(ctx.default_map or {}), **spec.as_options()}
    return value


# Setup CLI; every RunSpec key has a flag of the same name
@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="key = value run file; flags given on the command line override it",
)
@click.option("--problem", type=click.Choice(PROBLEM_NAMES), default="quadratic", help="Problem to solve")
@click.option("--method", type=click.Choice(METHOD_NAMES), default="reg_newton", help="Solver to run")
@click.option("--dataset", type=click.Path(exists=True, dir_okay=False), default=None, help="LIBSVM file for --problem logistic")
@click.option("--H", "h_const", type=float, default=None, help="Hessian constant H (defaults to the problem's known bound)")
@click.option("--c", "c_const", type=float, default=1.0, help="Cubic growth constant c for lm")
@click.option("--h0", type=float, default=1.0, help="Initial estimate H_0 for the adaptive methods")
@click.option("--L", "lipschitz", type=float, default=None, help="Gradient Lipschitz constant for gd and agd_restart")
@click.option("--tol", type=float, default=1e-8, help="Stop when the gradient norm drops below this")
@click.option("--max-iters", type=int, default=1000, help="Iteration cap")
@click.option("--seed", type=int, default=0, help="Seed for generated instances")
@click.option("--check-invariants/--no-check-invariants", default=False, help="Audit every step")
@click.option("--adaptive-c/--no-adaptive-c", default=False, help="Re-estimate c at every lm step")
@click.option("--rho", type=float, default=0.5, help="Log-sum-exp smoothing")
@click.option("--reg", type=float, default=None, help="l2 weight for logistic (default 1e-10 * ||A||^2 / n)")
@click.option("--dim", type=int, default=5, help="Dimension of quadratic, cubic_worstcase and least_squares")
@click.option("--n", type=int, default=200, help="Samples in generated instances")
@click.option("--d", type=int, default=50, help="Features in generated instances")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the trace CSV here")
@click.option("--experiment", type=click.Choice(EXPERIMENTS), default=None, help="Run a whole method roster instead")
@click.option("--out-dir", type=click.Path(file_okay=False), default="runs", help="Output directory for --experiment")
@click.option(
    "--log-level",
    default="INFO",
    help="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
)

# Main method below
def main(
    problem: str,
    method: str,
    dataset: str | None,
    h_const: float | None,
    c_const: float,
    h0: float,
    lipschitz: float | None,
    tol: float,
    max_iters: int,
    seed: int,
    check_invariants: bool,
    adaptive_c: bool,
    rho: float,
    reg: float | None,
    dim: int,
    n: int,
    d: int,
    out: str | None,
    experiment: str | None,
    out_dir: str,
    log_level: str,
) -> int:

    # Configure logging
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    register_all_methods()
    logger.info("\n\n" + return_methods() + "\n\n")

    if experiment is not None:
        params = ExperimentParams(
            dataset=dataset, rho=rho, seed=seed, n=n, d=d, reg=reg,
            h0=h0, tol=tol, max_iters=max_iters, check_invariants=check_invariants,
        )
        try:
            report = reproduce_experiment(experiment, params, out_dir)
        except (ValueError, OSError) as exc:
            raise click.UsageError(str(exc)) from exc
        click.echo(format_experiment_report(report))
        return 0

    spec = get_method(method)
    if (spec.family == "least_squares") != (problem == "least_squares"):
        raise click.UsageError(f"Method '{method}' cannot run on problem '{problem}'")

    try:
        instance = build_problem(problem, dataset=dataset, seed=seed, rho=rho, reg=reg, dim=dim, n=n, d=d)
        settings = MethodSettings(
            h_const=h_const if h_const is not None else (instance.hessian_lipschitz or 1.0),
            c_const=c_const,
            h0=h0,
            grad_tol=tol,
            max_iters=max_iters,
            check_invariants=check_invariants,
            lipschitz=lipschitz if lipschitz is not None else instance.lipschitz,
            adaptive_c=adaptive_c,
        )
        if spec.family == "least_squares":
            settings.lm_config()
        else:
            settings.solver_config()
    except (ValueError, OSError) as exc:
        raise click.UsageError(str(exc)) from exc

    try:
        result = dispatch(method, instance.oracle, instance.x0, settings)
    except SolverError as exc:
        click.echo(f"Error: {exc}", err=True)
        return 3

    if out is not None:
        write_trace_csv(result.trace, out, lm=spec.family == "least_squares")
    click.echo(format_summary(result))
    return EXIT_CODES[result.status]


def cli_run(argv: Sequence[str]) -> int:
    """Run the CLI on argv and return the process exit code (0, 2, 3 or 64)."""
    try:
        return main.main(args=list(argv), prog_name="regnewton", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
