"""Batch runs of the full method roster on the logistic-regression and log-sum-exp setups.

Methods run concurrently in worker threads; each run owns its trace and
writes exactly one CSV, so the output does not depend on scheduling.
"""

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path

import anyio

from data_io import load_libsvm, write_trace_csv
from errors import SingularSystemError, SolverError
from solvers import register_all_methods
from solvers.registry import MethodSettings, dispatch
from solvers.types import RunResult, RunStatus

from .problems import Problem, logistic_problem, logsumexp_problem
from .rates import iterations_to_tol

logger = logging.getLogger(__name__)

EXPERIMENTS = ("logreg_mushrooms", "logreg_w8a", "logsumexp_rho")
ROSTER = (
    "reg_newton",
    "cubic_newton",
    "gd",
    "agd_restart",
    "gd_armijo",
    "newton_armijo",
    "adan",
    "adan_probe",
    "adan_plus",
)
SUMMARY_HEADER = (
    "method",
    "status",
    "iterations",
    "iters_to_tol",
    "final_f",
    "final_grad_norm",
    "newton_steps",
    "violations",
    "message",
)

# mushrooms labels its classes 1 and 2
_POSITIVE_LABEL = {"logreg_mushrooms": 1.0, "logreg_w8a": None}


@dataclass(frozen=True)
class ExperimentParams:
    dataset: str | None = None
    rho: float = 0.5
    seed: int = 0
    n: int = 500
    d: int = 200
    reg: float | None = None
    h0: float = 1.0
    tol: float = 1e-8
    max_iters: int = 500
    check_invariants: bool = False
    max_workers: int = 4
    methods: tuple[str, ...] = ROSTER


@dataclass
class MethodOutcome:
    method: str
    status: RunStatus
    result: RunResult | None = None
    message: str = ""


@dataclass
class ExperimentReport:
    name: str
    summary_path: Path
    trace_paths: dict[str, Path] = field(default_factory=dict)
    outcomes: list[MethodOutcome] = field(default_factory=list)


def experiment_problem(name: str, params: ExperimentParams) -> Problem:
    if name == "logsumexp_rho":
        return logsumexp_problem(params.n, params.d, params.rho, params.seed)
    if name in _POSITIVE_LABEL:
        if params.dataset is None:
            raise ValueError(f"Experiment '{name}' needs a local LIBSVM dataset path")
        data = load_libsvm(params.dataset, positive_label=_POSITIVE_LABEL[name])
        return logistic_problem(data.to_csr(), data.labels, params.reg, name=name)
    raise ValueError(f"Unknown experiment: {name} (expected one of {', '.join(EXPERIMENTS)})")


def experiment_settings(problem: Problem, params: ExperimentParams) -> MethodSettings:
    return MethodSettings(
        h_const=problem.hessian_lipschitz or 1.0,
        h0=params.h0,
        grad_tol=params.tol,
        max_iters=params.max_iters,
        check_invariants=params.check_invariants,
        lipschitz=problem.lipschitz,
    )


def run_method(problem: Problem, method: str, settings: MethodSettings) -> MethodOutcome:
    try:
        result = dispatch(method, problem.oracle, problem.x0, settings)
    except SolverError as exc:
        status = RunStatus.SINGULAR_SYSTEM if isinstance(exc, SingularSystemError) else RunStatus.LINE_SEARCH_STALLED
        logger.error("%s on %s failed: %s", method, problem.name, exc)
        return MethodOutcome(method, status, None, str(exc))
    except Exception as exc:
        # one method's crash is recorded in its summary row; the roster carries on
        logger.exception("%s on %s raised %s", method, problem.name, type(exc).__name__)
        return MethodOutcome(method, RunStatus.LINE_SEARCH_STALLED, None, f"{type(exc).__name__}: {exc}")
    return MethodOutcome(method, result.status, result, result.message)


async def run_roster(problem: Problem, methods, settings: MethodSettings, max_workers: int = 4) -> list[MethodOutcome]:
    limiter = anyio.CapacityLimiter(max_workers)
    outcomes: dict[str, MethodOutcome] = {}

    async def run_one(method: str) -> None:
        outcomes[method] = await anyio.to_thread.run_sync(run_method, problem, method, settings, limiter=limiter)

    async with anyio.create_task_group() as tg:
        for method in methods:
            tg.start_soon(run_one, method)
    return [outcomes[method] for method in methods]


def _summary_row(outcome: MethodOutcome, tol: float) -> list[str]:
    result = outcome.result
    if result is None or not result.trace:
        return [outcome.method, str(outcome.status), "0", "", "", "", "0", "0", outcome.message]
    last = result.final_record
    reached = iterations_to_tol(result.trace, tol)
    return [
        outcome.method,
        str(outcome.status),
        str(result.iterations),
        "" if reached is None else str(reached),
        format(last.f, ".17g"),
        format(last.grad_norm, ".17g"),
        str(last.newton_steps_cum),
        str(len(result.invariant_violations)),
        outcome.message,
    ]


def write_summary_csv(outcomes: list[MethodOutcome], path: Path, tol: float) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for outcome in outcomes:
            writer.writerow(_summary_row(outcome, tol))
    return path


def reproduce_experiment(name: str, params: ExperimentParams, out_dir: str | Path) -> ExperimentReport:
    """Run the roster on the named setup; write <method>.csv per run plus summary.csv."""
    if name not in EXPERIMENTS:
        raise ValueError(f"Unknown experiment: {name} (expected one of {', '.join(EXPERIMENTS)})")
    problem = experiment_problem(name, params)
    register_all_methods()
    settings = experiment_settings(problem, params)
    logger.info("Running %d methods on %s with up to %d workers", len(params.methods), problem.name, params.max_workers)
    outcomes = anyio.run(run_roster, problem, params.methods, settings, params.max_workers)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = ExperimentReport(name=name, summary_path=out_dir / "summary.csv", outcomes=outcomes)
    for outcome in outcomes:
        trace = outcome.result.trace if outcome.result is not None else []
        report.trace_paths[outcome.method] = write_trace_csv(trace, out_dir / f"{outcome.method}.csv", lm=False)
    write_summary_csv(outcomes, report.summary_path, params.tol)
    for outcome in outcomes:
        logger.info("%-14s %s", outcome.method, outcome.status)
    return report
