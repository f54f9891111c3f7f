"""Exceptions raised across the toolkit.

Input problems derive from ValueError, numerical failures of a solver step
derive from SolverError (a RuntimeError). Drivers catch SolverError and turn it
into a RunStatus; single-step functions let it propagate.
"""


class DimensionMismatchError(ValueError):
    pass


class BadLabelError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class NonBinaryLabelError(ParseError):
    pass


class SchemaError(ValueError):
    pass


class DegenerateWindowError(ValueError):
    pass


class SolverError(RuntimeError):
    pass


class SingularSystemError(SolverError):
    pass


class LineSearchStalledError(SolverError):
    pass


class DegenerateStepError(SolverError):
    pass


class NoDescentError(SolverError):
    pass


class StallNoStepError(SolverError):
    pass


class BisectFailError(SolverError):
    pass
