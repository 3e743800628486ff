"""Lazy matrix handles and dense materialization.

A MatrixHandle stores a family identifier, a validated parameter record, and
a scalar kind; entries are computed on demand from the family's formula, so
the handle's storage never depends on the matrix dimensions (except for
families parametrized by a coefficient vector). DenseMatrix is the explicit
column-major materialization target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import fsum, sqrt
from typing import Any

from .errors import BoundsError, ParameterError, RationalOverflowError
from .scalars import RATIONAL64, as_float


@dataclass(frozen=True)
class MatrixHandle:
    """One constructed matrix: O(1) storage, elements computed on demand."""

    family: str
    params: dict
    scalar_kind: str
    rows: int
    cols: int
    record: Any = field(repr=False, compare=False)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.rows, self.cols)


class DenseMatrix:
    """Explicit dense storage, column-major: data[(j-1)*rows + (i-1)] = a_ij."""

    __slots__ = ("rows", "cols", "scalar_kind", "data")

    def __init__(self, rows: int, cols: int, data: list, scalar_kind: str):
        if len(data) != rows * cols:
            raise ParameterError(
                f"dense data length {len(data)} != rows*cols = {rows * cols}"
            )
        self.rows = rows
        self.cols = cols
        self.scalar_kind = scalar_kind
        self.data = data

    @classmethod
    def from_rows(cls, row_lists: list[list], scalar_kind: str) -> "DenseMatrix":
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        data = [row_lists[i][j] for j in range(cols) for i in range(rows)]
        return cls(rows, cols, data, scalar_kind)

    def get(self, i: int, j: int):
        """1-based entry access."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise BoundsError(
                f"index ({i}, {j}) out of bounds for {self.rows}x{self.cols} matrix"
            )
        return self.data[(j - 1) * self.rows + (i - 1)]

    def to_rows(self) -> list[list]:
        r, c, d = self.rows, self.cols, self.data
        return [[d[j * r + i] for j in range(c)] for i in range(r)]

    @property
    def dims(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for a, b in zip(self.data, other.data))
        )

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols}, {self.scalar_kind})"


def dims(h: MatrixHandle) -> tuple[int, int]:
    """Declared (rows, cols) of a handle."""
    return (h.rows, h.cols)


def element(h: MatrixHandle, i: int, j: int):
    """Entry a_ij, 1-based. Pure: equal arguments always yield equal values."""
    if not (1 <= i <= h.rows and 1 <= j <= h.cols):
        raise BoundsError(
            f"index ({i}, {j}) out of bounds for {h.rows}x{h.cols} {h.family}"
        )
    try:
        return h.record.element_fn(h.params, i, j, h.scalar_kind)
    except RationalOverflowError as exc:
        raise RationalOverflowError(
            f"{h.family} entry ({i}, {j}): {exc}; use scalar kind float64 for this instance"
        ) from exc


def materialize(h: MatrixHandle) -> DenseMatrix:
    """Dense column-major copy of the handle."""
    fn = h.record.element_fn
    params, kind = h.params, h.scalar_kind
    rows, cols = h.rows, h.cols
    data = []
    append = data.append
    try:
        for j in range(1, cols + 1):
            for i in range(1, rows + 1):
                append(fn(params, i, j, kind))
    except RationalOverflowError as exc:
        raise RationalOverflowError(
            f"{h.family} entry ({i}, {j}): {exc}; use scalar kind float64 for this instance"
        ) from exc
    return DenseMatrix(rows, cols, data, kind)


def handle_footprint(h: MatrixHandle) -> int:
    """In-memory bytes of the parameter record, as a packed-struct estimate.

    16 bytes for the row/col counts plus 8 per non-dimension scalar or flag
    parameter and 8 per vector descriptor. Vector element storage is excluded
    here and reported by vector_footprint(). The exact value is an
    implementation detail; its independence from the matrix size is the
    contract.
    """
    size = 16
    for spec in h.record.descriptor.params:
        if spec.kind == "dim":
            continue
        size += 8
    return size


def vector_footprint(h: MatrixHandle) -> int:
    """Bytes of owned vector-parameter elements (8 per element)."""
    total = 0
    for spec in h.record.descriptor.params:
        if spec.kind == "vector":
            total += 8 * len(h.params[spec.name])
    return total


def dense_footprint(d: DenseMatrix) -> int:
    """Data bytes of a dense materialization (8 per float64 entry, 16 per rational)."""
    per_entry = 16 if d.scalar_kind == RATIONAL64 else 8
    return per_entry * d.rows * d.cols


def frobenius_of_dense(d: DenseMatrix) -> float:
    total = fsum(
        (abs(v) if isinstance(v, complex) else abs(as_float(v))) ** 2 for v in d.data
    )
    return sqrt(total)
