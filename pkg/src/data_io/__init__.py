"""Datasets, synthetic instances, trace CSVs and run files."""

from .libsvm import SparseDataset, format_libsvm, load_libsvm, parse_libsvm  # noqa: F401
from .run_spec import METHOD_NAMES, PROBLEM_NAMES, RunSpec, load_run_spec  # noqa: F401
from .synthetic import gen_logistic_instance, gen_logsumexp_instance  # noqa: F401
from .traces import LM_TRACE_HEADER, TRACE_HEADER, read_trace_csv, write_trace_csv  # noqa: F401
