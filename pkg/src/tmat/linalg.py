"""Dense linear-algebra fallbacks and the closed-form dispatch layer.

Every operation prefers a family's registered closed-form routine and falls
back to a generic algorithm on the materialized matrix: LU with partial
pivoting (exact in rational64, thresholded in float64) for determinants,
inverses, solves, and ranks, and a cyclic Jacobi sweep for symmetric
spectra.
"""

from __future__ import annotations

from math import fsum, hypot, sqrt

from .core import DenseMatrix, MatrixHandle, frobenius_of_dense, materialize
from .errors import (
    ConvergenceError,
    RationalOverflowError,
    SingularMatrixError,
    UnsupportedOperationError,
)
from .scalars import FLOAT64, RATIONAL64, Rational64, as_float, one, zero

FLOAT_SINGULAR_RTOL = 1e-13  # pivot below this times ||A||_F is singular
FLOAT_RANK_RTOL = 1e-10
COND1_DIM_BOUND = 64


def _is_exact(values_kind: str) -> bool:
    return values_kind == RATIONAL64 or values_kind == "exact"


def _mag(v) -> float:
    if isinstance(v, Rational64):
        # exact comparisons use the rational directly; magnitude only breaks ties
        return abs(v.num / v.den)
    return abs(v)


def as_dense(obj) -> DenseMatrix:
    if isinstance(obj, DenseMatrix):
        return obj
    if isinstance(obj, MatrixHandle):
        return materialize(obj)
    raise TypeError(f"expected a matrix handle or dense matrix, got {type(obj).__name__}")


def _require_square(h, what: str):
    if h.rows != h.cols:
        raise UnsupportedOperationError(
            f"{what} requires a square matrix, got {h.rows}x{h.cols}"
        )


def _float_advice(exc: RationalOverflowError) -> RationalOverflowError:
    msg = str(exc)
    if "float64" in msg:
        return exc
    return RationalOverflowError(f"{msg}; use scalar kind float64 for this instance")


# -- LU with partial pivoting -------------------------------------------------


def _lu_factor(rows: list[list], kind: str, frob: float):
    """In-place LU with partial pivoting (largest magnitude, lowest row on ties).

    Returns (lu, perm, sign, singular_col) where singular_col is the first
    column without an acceptable pivot, or None.
    """
    n = len(rows)
    a = [row[:] for row in rows]
    perm = list(range(n))
    sign = 1
    exact = _is_exact(kind)
    tol = 0.0 if exact else FLOAT_SINGULAR_RTOL * frob
    for c in range(n):
        best, best_mag = c, _mag(a[c][c])
        for r in range(c + 1, n):
            m = _mag(a[r][c])
            if m > best_mag:
                best, best_mag = r, m
        pivot_ok = (a[best][c] != 0) if exact else (best_mag >= tol and best_mag > 0.0)
        if not pivot_ok:
            return a, perm, sign, c
        if best != c:
            a[c], a[best] = a[best], a[c]
            perm[c], perm[best] = perm[best], perm[c]
            sign = -sign
        pivot = a[c][c]
        for r in range(c + 1, n):
            if a[r][c] == 0:
                continue
            f = a[r][c] / pivot
            a[r][c] = f
            row_r, row_c = a[r], a[c]
            for k in range(c + 1, n):
                row_r[k] = row_r[k] - f * row_c[k]
    return a, perm, sign, None


def det_dense(d: DenseMatrix, kind: str | None = None):
    """Determinant of a dense square matrix by pivoted LU."""
    kind = kind or d.scalar_kind
    n = d.rows
    if n != d.cols:
        raise UnsupportedOperationError("determinant requires a square matrix")
    if n == 0:
        return one(kind) if kind in (RATIONAL64, FLOAT64) else 1.0
    rows = d.to_rows()
    frob = 0.0 if _is_exact(kind) else frobenius_of_dense(d)
    try:
        lu, _, sign, singular = _lu_factor(rows, kind, frob)
    except RationalOverflowError as exc:
        raise _float_advice(exc) from exc
    if singular is not None:
        return zero(kind) if kind in (RATIONAL64, FLOAT64) else 0.0
    det = lu[0][0]
    for i in range(1, n):
        det = det * lu[i][i]
    return -det if sign < 0 else det


def _lu_solve_one(lu, perm, b):
    n = len(lu)
    y = [b[perm[i]] for i in range(n)]
    for i in range(n):
        row = lu[i]
        acc = y[i]
        for k in range(i):
            acc = acc - row[k] * y[k]
        y[i] = acc
    for i in range(n - 1, -1, -1):
        row = lu[i]
        acc = y[i]
        for k in range(i + 1, n):
            acc = acc - row[k] * y[k]
        y[i] = acc / row[i]
    return y


def _factor_or_raise(d: DenseMatrix, kind: str):
    rows = d.to_rows()
    frob = 0.0 if _is_exact(kind) else frobenius_of_dense(d)
    try:
        lu, perm, sign, singular = _lu_factor(rows, kind, frob)
    except RationalOverflowError as exc:
        raise _float_advice(exc) from exc
    if singular is not None:
        detail = (
            "exactly singular" if _is_exact(kind) else "singular to working precision"
        )
        raise SingularMatrixError(f"matrix is {detail} (no pivot in column {singular + 1})")
    return lu, perm, sign


def solve_dense(d: DenseMatrix, rhs: list, kind: str | None = None) -> list:
    kind = kind or d.scalar_kind
    n = d.rows
    if n != d.cols:
        raise UnsupportedOperationError("solve requires a square matrix")
    if len(rhs) != n:
        raise UnsupportedOperationError(
            f"right-hand side length {len(rhs)} != matrix dimension {n}"
        )
    lu, perm, _ = _factor_or_raise(d, kind)
    return _lu_solve_one(lu, perm, list(rhs))


def inverse_dense(d: DenseMatrix, kind: str | None = None) -> DenseMatrix:
    kind = kind or d.scalar_kind
    n = d.rows
    if n != d.cols:
        raise UnsupportedOperationError("inverse requires a square matrix")
    lu, perm, _ = _factor_or_raise(d, kind)
    data = []
    for j in range(n):
        e = [zero(kind)] * n
        e[j] = one(kind)
        data.extend(_lu_solve_one(lu, perm, e))
    return DenseMatrix(n, n, data, kind)


def rank_dense(d: DenseMatrix, kind: str | None = None) -> int:
    """Rank by row echelon with partial pivoting; exact zeros in rational64,
    pivots below 1e-10 * ||A||_F treated as zero in float64."""
    kind = kind or d.scalar_kind
    m, n = d.rows, d.cols
    if m == 0 or n == 0:
        return 0
    rows = d.to_rows()
    exact = _is_exact(kind)
    tol = 0.0 if exact else FLOAT_RANK_RTOL * frobenius_of_dense(d)
    r = 0
    try:
        for c in range(n):
            if r == m:
                break
            best, best_mag = r, _mag(rows[r][c])
            for i in range(r + 1, m):
                mag = _mag(rows[i][c])
                if mag > best_mag:
                    best, best_mag = i, mag
            if (exact and rows[best][c] == 0) or (not exact and best_mag <= tol):
                continue
            rows[r], rows[best] = rows[best], rows[r]
            pivot = rows[r][c]
            for i in range(r + 1, m):
                if rows[i][c] == 0:
                    continue
                f = rows[i][c] / pivot
                row_i, row_r = rows[i], rows[r]
                for k in range(c, n):
                    row_i[k] = row_i[k] - f * row_r[k]
            r += 1
    except RationalOverflowError as exc:
        raise _float_advice(exc) from exc
    return r


# -- cyclic Jacobi for symmetric float matrices --------------------------------


def jacobi_eigvals(rows: list[list[float]], max_sweeps: int = 100, tol_factor: float = 1e-14) -> list[float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius norm drops below
    tol_factor * ||A||_F; raises ConvergenceError after max_sweeps.
    """
    n = len(rows)
    if n == 0:
        return []
    if n == 1:
        return [rows[0][0]]
    a = [[float(v) for v in row] for row in rows]
    frob = sqrt(fsum(v * v for row in a for v in row))
    thresh = tol_factor * frob

    def off_norm():
        return sqrt(fsum(a[p][q] ** 2 for p in range(n) for q in range(n) if p != q))

    for _ in range(max_sweeps):
        if off_norm() <= thresh:
            return sorted(a[i][i] for i in range(n))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                if theta >= 0:
                    t = 1.0 / (theta + hypot(theta, 1.0))
                else:
                    t = -1.0 / (-theta + hypot(theta, 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    if off_norm() <= thresh:
        return sorted(a[i][i] for i in range(n))
    raise ConvergenceError("Jacobi eigensolver did not converge within the sweep limit")


def _cholesky_ok(rows: list[list[float]]) -> bool:
    n = len(rows)
    low = [[0.0] * n for _ in range(n)]
    for j in range(n):
        s = rows[j][j] - fsum(low[j][k] ** 2 for k in range(j))
        if s <= 0.0:
            return False
        low[j][j] = sqrt(s)
        for i in range(j + 1, n):
            low[i][j] = (rows[i][j] - fsum(low[i][k] * low[j][k] for k in range(j))) / low[j][j]
    return True


# -- dense scans (also the slow side of the lazy-vs-dense benchmarks) ----------


def dense_is_symmetric(d: DenseMatrix) -> bool:
    if d.rows != d.cols:
        return False
    n, data = d.rows, d.data
    for j in range(n):
        base = j * n
        for i in range(j + 1, n):
            if data[base + i] != data[i * n + j]:
                return False
    return True


def dense_is_diagonal(d: DenseMatrix) -> bool:
    m, data = d.rows, d.data
    for j in range(d.cols):
        base = j * m
        for i in range(m):
            if i != j and data[base + i] != 0:
                return False
    return True


def dense_sum(d: DenseMatrix):
    if d.scalar_kind == RATIONAL64:
        acc = Rational64(0)
        for v in d.data:
            acc = acc + v
        return acc
    return fsum(d.data)


def _float_twin(h: MatrixHandle) -> MatrixHandle:
    """The same matrix with float64 scalars (parameters re-coerced)."""
    if h.scalar_kind == FLOAT64:
        return h
    from .families import construct

    return construct(h.family, dict(h.params), scalar_kind=FLOAT64)


def _float_rows(h: MatrixHandle) -> list[list[float]]:
    """Materialize as float64 rows regardless of the handle's scalar kind."""
    twin = _float_twin(h)
    fn = twin.record.element_fn
    params = twin.params
    return [
        [fn(params, i, j, FLOAT64) for j in range(1, twin.cols + 1)]
        for i in range(1, twin.rows + 1)
    ]


# -- dispatched public operations ----------------------------------------------


def determinant(h: MatrixHandle):
    """Closed-form determinant when registered, else pivoted LU."""
    _require_square(h, "determinant")
    rec = h.record
    if rec.has_capability("closed_det"):
        try:
            return rec.det_fn(h)
        except RationalOverflowError as exc:
            raise _float_advice(exc) from exc
    return det_dense(materialize(h), h.scalar_kind)


def inverse(h: MatrixHandle):
    """Closed-form inverse (lazy handle or structured dense) when registered,
    else dense LU inverse. Raises SingularMatrixError on singular input."""
    _require_square(h, "inverse")
    rec = h.record
    if rec.has_capability("closed_inverse"):
        result = rec.inverse_fn(h)
        if result is not None:
            return result
    return inverse_dense(materialize(h), h.scalar_kind)


def eigvals(h: MatrixHandle):
    """Sorted spectrum: closed form when registered; otherwise cyclic Jacobi,
    which requires a symmetric matrix."""
    _require_square(h, "eigvals")
    rec = h.record
    if rec.has_capability("closed_eigvals"):
        return rec.eigvals_fn(h)
    if not is_symmetric(h):
        raise UnsupportedOperationError(
            f"eigvals of '{h.family}' has no closed form and the matrix is not "
            "symmetric; the generic eigensolver handles symmetric matrices only"
        )
    return jacobi_eigvals(_float_rows(h))


def entry_sum(h: MatrixHandle):
    """Sum of all entries, streamed in the handle's scalar kind."""
    fn = h.record.element_fn
    params, kind = h.params, h.scalar_kind
    if kind == RATIONAL64:
        acc = Rational64(0)
        for j in range(1, h.cols + 1):
            for i in range(1, h.rows + 1):
                acc = acc + fn(params, i, j, kind)
        return acc
    return fsum(
        fn(params, i, j, kind) for j in range(1, h.cols + 1) for i in range(1, h.rows + 1)
    )


def frobenius_norm(h: MatrixHandle) -> float:
    """sqrt of the sum of squared entries, streamed without materialization."""
    fn = h.record.element_fn
    params, kind = h.params, h.scalar_kind
    total = fsum(
        as_float(fn(params, i, j, kind)) ** 2
        for j in range(1, h.cols + 1)
        for i in range(1, h.rows + 1)
    )
    return sqrt(total)


def _predicate(h: MatrixHandle, name: str):
    rec = h.record
    if rec.has_capability("closed_predicates"):
        fn = rec.predicates.get(name)
        if fn is not None:
            return fn(h)
    return None


def _scan_symmetric(h: MatrixHandle) -> bool:
    if h.rows != h.cols:
        return False
    probe = h
    for attempt in range(2):
        fn = probe.record.element_fn
        params, kind = probe.params, probe.scalar_kind
        try:
            return all(
                fn(params, i, j, kind) == fn(params, j, i, kind)
                for i in range(1, h.rows + 1)
                for j in range(i + 1, h.cols + 1)
            )
        except RationalOverflowError:
            # entries not representable exactly; retry on a float64 twin
            probe = _float_twin(h)
    return False


def _scan_diagonal(h: MatrixHandle) -> bool:
    probe = h
    for attempt in range(2):
        fn = probe.record.element_fn
        params, kind = probe.params, probe.scalar_kind
        try:
            return all(
                fn(params, i, j, kind) == 0
                for i in range(1, h.rows + 1)
                for j in range(1, h.cols + 1)
                if i != j
            )
        except RationalOverflowError:
            probe = _float_twin(h)
    return False


def is_symmetric(h: MatrixHandle) -> bool:
    fast = _predicate(h, "symmetric")
    if fast is not None:
        return fast
    return _scan_symmetric(h)


def is_diagonal(h: MatrixHandle) -> bool:
    fast = _predicate(h, "diagonal")
    if fast is not None:
        return fast
    return _scan_diagonal(h)


def is_posdef(h: MatrixHandle) -> bool:
    fast = _predicate(h, "posdef")
    if fast is not None:
        return fast
    if h.rows != h.cols:
        return False
    if not _scan_symmetric(h):
        return False
    return _cholesky_ok(_float_rows(h))


def solve(h: MatrixHandle, rhs: list) -> list:
    """LU solve of A x = rhs; exact in rational64."""
    _require_square(h, "solve")
    if h.scalar_kind == RATIONAL64:
        rhs = [Rational64.from_number(v) if not isinstance(v, Rational64) else v for v in rhs]
    else:
        rhs = [float(v) for v in rhs]
    return solve_dense(materialize(h), rhs, h.scalar_kind)


def rank(h: MatrixHandle) -> int:
    return rank_dense(materialize(h), h.scalar_kind)


def cond1(h: MatrixHandle, *, bound: int = COND1_DIM_BOUND) -> float:
    """1-norm condition number by explicit inverse, computed in float64.

    Singular matrices yield +inf. The dimension is capped (default 64) since
    explicit inversion is intended for desk-scale diagnostics.
    """
    _require_square(h, "cond1")
    n = h.rows
    if n == 0:
        return 0.0
    if n > bound:
        raise UnsupportedOperationError(
            f"cond1 is limited to dimension <= {bound}, got {n}"
        )
    rows = _float_rows(h)
    norm_a = _norm1_rows(rows)
    dense = DenseMatrix.from_rows(rows, FLOAT64)
    try:
        inv = inverse_dense(dense, FLOAT64)
    except SingularMatrixError:
        return float("inf")
    return norm_a * _norm1_rows(inv.to_rows())


def _norm1_rows(rows: list[list[float]]) -> float:
    if not rows:
        return 0.0
    n = len(rows[0])
    return max(
        (fsum(abs(rows[i][j]) for i in range(len(rows))) for j in range(n)),
        default=0.0,
    )


def spectral_moduli(h: MatrixHandle, rel_tol: float = 1e-9) -> list[tuple[float, int]]:
    """Spectrum grouped by modulus: sorted (modulus, multiplicity) pairs."""
    vals = eigvals(h)
    moduli = sorted(abs(v) for v in vals)
    groups: list[list[float]] = []
    for m in moduli:
        if groups and abs(m - groups[-1][-1]) <= rel_tol * max(1.0, abs(m)):
            groups[-1].append(m)
        else:
            groups.append([m])
    return [(sum(g) / len(g), len(g)) for g in groups]


# -- small dense helpers shared with the audit engine ---------------------------


def matmul_dense(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.cols != b.rows:
        raise UnsupportedOperationError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    ar = a.to_rows()
    br = b.to_rows()
    kind = a.scalar_kind
    out_rows = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = zero(kind) if kind in (RATIONAL64, FLOAT64) else 0.0
            for k in range(a.cols):
                acc = acc + ar[i][k] * br[k][j]
            row.append(acc)
        out_rows.append(row)
    if not out_rows:
        return DenseMatrix(a.rows, b.cols, [], kind)
    return DenseMatrix.from_rows(out_rows, kind)


def max_abs_identity_residual(d: DenseMatrix) -> float:
    """max |d_ij - delta_ij| as float (exact zeros stay exact for rationals)."""
    worst = 0.0
    for j in range(1, d.cols + 1):
        for i in range(1, d.rows + 1):
            v = d.get(i, j)
            target = 1 if i == j else 0
            diff = abs(as_float(v) - target)
            if diff > worst:
                worst = diff
    return worst


def is_exact_identity(d: DenseMatrix) -> bool:
    return all(
        d.get(i, j) == (1 if i == j else 0)
        for j in range(1, d.cols + 1)
        for i in range(1, d.rows + 1)
    )
