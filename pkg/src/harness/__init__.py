"""Problem catalogue, rate diagnostics and the experiment batch runner."""

from .experiments import (  # noqa: F401
    EXPERIMENTS,
    ROSTER,
    SUMMARY_HEADER,
    ExperimentParams,
    ExperimentReport,
    MethodOutcome,
    reproduce_experiment,
    run_roster,
)
from .problems import Problem, build_problem, logistic_problem, logsumexp_problem  # noqa: F401
from .rates import (  # noqa: F401
    IterationPartition,
    RateFit,
    blow_up_indices,
    default_rate_window,
    fit_rate,
    iterations_to_tol,
    sequence_bound_check,
    steady_sharp_partition,
)
