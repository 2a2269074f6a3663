"""Plain-text matrix serialization.

Format: a header line ``rows cols`` (ASCII decimal integers) followed by
``rows`` lines of ``cols`` space-separated decimal floats. Values are written
with full round-trip precision, so a dump/load cycle is bit-exact.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .core import as_matrix
from .errors import MatrixFormatError


def dump_matrix(a) -> str:
    a = as_matrix(a)
    rows, cols = a.shape
    lines = [f"{rows} {cols}"]
    for i in range(rows):
        lines.append(" ".join(repr(float(v)) for v in a[i, :]))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError(f"header must be 'rows cols', got {lines[0]!r}") from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {rows}x{cols}")
    if len(lines) - 1 != rows:
        raise MatrixFormatError(f"expected {rows} data rows, found {len(lines) - 1}")
    data = np.empty((rows, cols))
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != cols:
            raise MatrixFormatError(f"ragged row {i}: expected {cols} values, found {len(tokens)}")
        try:
            values = [float(t) for t in tokens]
        except ValueError as exc:
            raise MatrixFormatError(f"row {i} contains a non-numeric value: {exc}") from None
        if not all(math.isfinite(v) for v in values):
            raise MatrixFormatError(f"row {i} contains a non-finite value")
        data[i, :] = values
    return data


def write_matrix(path, a) -> None:
    Path(path).write_text(dump_matrix(a), encoding="ascii")


def read_matrix(path) -> np.ndarray:
    return load_matrix(Path(path).read_text(encoding="ascii"))
