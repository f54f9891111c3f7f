from solvers.registry import list_all_methods
from solvers.types import LMTraceRecord, RunResult


def return_methods():
    methods = list_all_methods()

    # Log methods
    if methods:
        lines = []
        for method in methods:
            description = method.description.strip()
            # Keep description concise in logs
            if len(description) > 120:
                description = description[:117] + "..."
            lines.append(f"- {method.name} ({method.title}): {description}")
        return f"Loaded following methods (count={len(methods)}):\n{'\n'.join(lines)}"
    else:
        return "No methods loaded."


def format_summary(result: RunResult) -> str:
    """status=<s> iters=<k> f=<v> grad_norm=<g> violations=<m>"""
    last = result.final_record
    if last is None:
        value, grad_norm = float("nan"), float("nan")
    elif isinstance(last, LMTraceRecord):
        value, grad_norm = 0.5 * last.residual_norm**2, last.grad_norm
    else:
        value, grad_norm = last.f, last.grad_norm
    return (
        f"status={result.status} iters={result.iterations} f={value:.12e} "
        f"grad_norm={grad_norm:.6e} violations={len(result.invariant_violations)}"
    )


def format_experiment_report(report) -> str:
    lines = [f"{report.name}: summary written to {report.summary_path}"]
    for outcome in report.outcomes:
        iterations = outcome.result.iterations if outcome.result is not None else 0
        lines.append(f"  {outcome.method:<14} status={outcome.status} iters={iterations}")
    return "\n".join(lines)
