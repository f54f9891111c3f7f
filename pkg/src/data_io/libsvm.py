"""LIBSVM text datasets.

Indices stay 1-based inside SparseDataset; `to_csr` / `to_dense` are the only
places they become 0-based columns.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np
from scipy import sparse

from errors import NonBinaryLabelError, ParseError

logger = logging.getLogger(__name__)

Row = list[tuple[int, float]]

_LABEL_MAP = {-1.0: 0.0, 0.0: 0.0, 1.0: 1.0}


@dataclass(frozen=True, eq=False)
class SparseDataset:
    n: int
    d: int
    rows: list[Row]
    labels: np.ndarray

    def __post_init__(self) -> None:
        if not (self.n == len(self.rows) == len(self.labels)):
            raise ValueError(f"n={self.n} disagrees with {len(self.rows)} rows and {len(self.labels)} labels")
        for i, row in enumerate(self.rows):
            indices = [idx for idx, _ in row]
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise ValueError(f"Row {i}: indices must be strictly increasing")
            if indices and (indices[0] < 1 or indices[-1] > self.d):
                raise ValueError(f"Row {i}: indices must lie in 1..{self.d}")

    def to_csr(self) -> sparse.csr_matrix:
        indptr = [0]
        indices: list[int] = []
        data: list[float] = []
        for row in self.rows:
            for idx, value in row:
                indices.append(idx - 1)
                data.append(value)
            indptr.append(len(indices))
        return sparse.csr_matrix((data, indices, indptr), shape=(self.n, self.d), dtype=float)

    def to_dense(self) -> np.ndarray:
        return self.to_csr().toarray()


def _parse_label(token: str, line_no: int, positive_label: float | None) -> float:
    try:
        raw = float(token)
    except ValueError:
        raise ParseError(f"Bad label {token!r}", line_no) from None
    if positive_label is not None:
        return 1.0 if raw == positive_label else 0.0
    if raw not in _LABEL_MAP:
        raise NonBinaryLabelError(f"Label {token!r} is not one of -1, 0, +1", line_no)
    return _LABEL_MAP[raw]


def _parse_feature(token: str, line_no: int) -> tuple[int, float]:
    idx_text, sep, value_text = token.partition(":")
    if not sep:
        raise ParseError(f"Expected <index>:<value>, got {token!r}", line_no)
    try:
        idx = int(idx_text)
        value = float(value_text)
    except ValueError:
        raise ParseError(f"Malformed feature {token!r}", line_no) from None
    if idx < 1:
        raise ParseError(f"Feature index must be >= 1, got {idx}", line_no)
    if not math.isfinite(value):
        raise ParseError(f"Non-finite feature value in {token!r}", line_no)
    return idx, value


def parse_libsvm(stream: TextIO | Iterable[str], d: int | None = None, *, positive_label: float | None = None) -> SparseDataset:
    """Parse "<label> <idx>:<val> ..." lines.

    Labels -1/+1 map to 0/1. With `positive_label`, that label maps to 1 and
    every other label to 0 (e.g. mushrooms uses 1/2). `d` defaults to the
    largest index seen.
    """
    rows: list[Row] = []
    labels: list[float] = []
    max_index = 0
    for line_no, line in enumerate(stream, start=1):
        content = line.split("#", 1)[0].split()
        if not content:
            continue
        label = _parse_label(content[0], line_no, positive_label)
        row: Row = []
        for token in content[1:]:
            idx, value = _parse_feature(token, line_no)
            if row and idx <= row[-1][0]:
                raise ParseError(f"Feature indices not increasing ({row[-1][0]} then {idx})", line_no)
            row.append((idx, value))
        if row:
            max_index = max(max_index, row[-1][0])
        rows.append(row)
        labels.append(label)

    if d is None:
        d = max_index
    elif max_index > d:
        raise ParseError(f"Feature index {max_index} exceeds d={d}")
    logger.debug("Parsed %d samples with %d features", len(rows), d)
    return SparseDataset(n=len(rows), d=d, rows=rows, labels=np.asarray(labels, dtype=float))


def format_libsvm(dataset: SparseDataset) -> str:
    lines = []
    for label, row in zip(dataset.labels, dataset.rows):
        features = " ".join(f"{idx}:{value!r}" for idx, value in row)
        lines.append(f"{int(label)} {features}".rstrip())
    return "".join(line + "\n" for line in lines)


def load_libsvm(path: str | Path, d: int | None = None, *, positive_label: float | None = None) -> SparseDataset:
    with open(path, encoding="utf-8") as stream:
        dataset = parse_libsvm(stream, d, positive_label=positive_label)
    logger.info("Loaded %s: n=%d d=%d", path, dataset.n, dataset.d)
    return dataset
