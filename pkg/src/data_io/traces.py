import csv
import logging
from dataclasses import astuple
from pathlib import Path

from errors import SchemaError
from solvers.types import LMTraceRecord, TraceRecord

logger = logging.getLogger(__name__)

TRACE_HEADER = ("k", "f", "grad_norm", "lambda", "step_norm", "h_k", "inner_count", "newton_steps_cum", "wall_ms")
LM_TRACE_HEADER = ("k", "residual_norm", "grad_norm", "lambda", "step_norm", "c_k")

# column -> parser; ints stay ints, reals round-trip through 17 significant digits
_TRACE_TYPES = (int, float, float, float, float, float, int, int, float)
_LM_TRACE_TYPES = (int, float, float, float, float, float)


def _format(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def write_trace_csv(trace: list, path: str | Path, *, lm: bool | None = None) -> Path:
    """Write a Newton-family or LM trace. `lm` picks the schema for an empty trace."""
    if lm is None:
        lm = bool(trace) and isinstance(trace[0], LMTraceRecord)
    header = LM_TRACE_HEADER if lm else TRACE_HEADER
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for record in trace:
            writer.writerow(_format(value) for value in astuple(record))
    logger.debug("Wrote %d trace rows to %s", len(trace), path)
    return path


def read_trace_csv(path: str | Path) -> list:
    with open(path, newline="", encoding="utf-8") as stream:
        reader = csv.reader(stream)
        header = tuple(next(reader, ()))
        if header == TRACE_HEADER:
            record_type, parsers = TraceRecord, _TRACE_TYPES
        elif header == LM_TRACE_HEADER:
            record_type, parsers = LMTraceRecord, _LM_TRACE_TYPES
        else:
            raise SchemaError(f"Unrecognized trace header in {path}: {','.join(header)!r}")
        trace = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(parsers):
                raise SchemaError(f"{path}:{line_no}: expected {len(parsers)} columns, got {len(row)}")
            try:
                trace.append(record_type(*(parse(cell) for parse, cell in zip(parsers, row))))
            except ValueError as exc:
                raise SchemaError(f"{path}:{line_no}: {exc}") from exc
    return trace
