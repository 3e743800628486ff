"""Matrix Market exchange format: array/coordinate writers, array reader.

Writers emit the text format with LF line endings and a byte-stable decimal
rendering (the shortest representation that round-trips float64). Rational
entries are converted to decimal, with a provenance comment recording the
original scalar kind since the format has no rational field. The reader
supports `array real general` and `array real symmetric` files, for round-trip
testing.
"""

from __future__ import annotations

from contextlib import contextmanager

from .core import DenseMatrix, MatrixHandle, element
from .errors import MatrixMarketError
from .linalg import is_symmetric
from .scalars import FLOAT64, RATIONAL64, as_float

BANNER = "%%MatrixMarket"


def format_value(x: float) -> str:
    """Shortest decimal that round-trips the float64 value."""
    if x == 0.0:
        return "0"
    text = repr(float(x))
    if text.endswith(".0"):
        return text[:-2]
    return text


@contextmanager
def _sink(target):
    if hasattr(target, "write"):
        yield target
    else:
        with open(target, "w", encoding="utf-8", newline="") as handle:
            yield handle


def _header_lines(h: MatrixHandle, layout: str, symmetry: str) -> list[str]:
    lines = [f"{BANNER} matrix {layout} real {symmetry}"]
    if h.scalar_kind == RATIONAL64:
        lines.append("% scalar-kind: rational64")
    return lines


def export_array(h: MatrixHandle, sink, *, symmetric: bool = False) -> None:
    """Write the dense array format: size line `m n`, then the entries in
    column-major order, one per line. With symmetric=True only the lower
    triangle (j <= i) is stored and the header carries the qualifier."""
    symmetry = "general"
    if symmetric:
        if h.rows != h.cols or not is_symmetric(h):
            raise MatrixMarketError(
                "the symmetric qualifier requires a square symmetric matrix"
            )
        symmetry = "symmetric"
    with _sink(sink) as out:
        for line in _header_lines(h, "array", symmetry):
            out.write(line + "\n")
        out.write(f"{h.rows} {h.cols}\n")
        for j in range(1, h.cols + 1):
            start = j if symmetric else 1
            for i in range(start, h.rows + 1):
                out.write(format_value(as_float(element(h, i, j))) + "\n")


def export_coordinate(h: MatrixHandle, sink, zero_tol: float = 0.0) -> None:
    """Write the sparse coordinate format: size line `m n nnz`, then 1-based
    `i j value` triplets in row-major traversal order; entries with
    |value| <= zero_tol are dropped."""
    entries = []
    for i in range(1, h.rows + 1):
        for j in range(1, h.cols + 1):
            v = as_float(element(h, i, j))
            if abs(v) > zero_tol:
                entries.append((i, j, v))
    with _sink(sink) as out:
        for line in _header_lines(h, "coordinate", "general"):
            out.write(line + "\n")
        out.write(f"{h.rows} {h.cols} {len(entries)}\n")
        for i, j, v in entries:
            out.write(f"{i} {j} {format_value(v)}\n")


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(source, "r", encoding="utf-8") as handle:
        return handle.read()


def import_array(source) -> DenseMatrix:
    """Parse an `array real general|symmetric` file into a float64 DenseMatrix."""
    lines = _read_text(source).splitlines()
    if not lines:
        raise MatrixMarketError("empty file (line 1)")
    tokens = lines[0].split()
    if len(tokens) != 5 or tokens[0] != BANNER or tokens[1].lower() != "matrix":
        raise MatrixMarketError(f"malformed header (line 1): {lines[0]!r}")
    layout, field, symmetry = tokens[2].lower(), tokens[3].lower(), tokens[4].lower()
    if layout != "array":
        raise MatrixMarketError(f"unsupported format '{layout}' (line 1); only array is readable")
    if field != "real":
        raise MatrixMarketError(f"unsupported field '{field}' (line 1); only real is supported")
    if symmetry not in ("general", "symmetric"):
        raise MatrixMarketError(f"unsupported symmetry '{symmetry}' (line 1)")

    number = 1
    size_line = None
    values: list[float] = []
    for raw in lines[1:]:
        number += 1
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        if size_line is None:
            parts = text.split()
            if len(parts) != 2:
                raise MatrixMarketError(f"malformed size line (line {number}): {raw!r}")
            try:
                size_line = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise MatrixMarketError(f"malformed size line (line {number}): {raw!r}") from None
            if size_line[0] < 0 or size_line[1] < 0:
                raise MatrixMarketError(f"negative dimensions (line {number})")
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise MatrixMarketError(f"malformed value (line {number}): {raw!r}") from None

    if size_line is None:
        raise MatrixMarketError(f"missing size line (after line {number})")
    m, n = size_line
    if symmetry == "symmetric":
        if m != n:
            raise MatrixMarketError("symmetric array files must be square")
        expected = n * (n + 1) // 2
    else:
        expected = m * n
    if len(values) < expected:
        raise MatrixMarketError(
            f"unexpected end of data: {len(values)} of {expected} values (after line {number})"
        )
    if len(values) > expected:
        raise MatrixMarketError(f"trailing data: expected {expected} values, got {len(values)}")

    data = [0.0] * (m * n)
    if symmetry == "general":
        data[:] = values
    else:
        k = 0
        for j in range(1, n + 1):
            for i in range(j, m + 1):
                v = values[k]
                k += 1
                data[(j - 1) * m + (i - 1)] = v
                data[(i - 1) * m + (j - 1)] = v
    return DenseMatrix(m, n, data, FLOAT64)
