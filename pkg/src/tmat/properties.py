"""Property vocabulary, tag queries, and the tag audit engine.

The vocabulary is a fixed, closed set of 37 structural/mathematical tags.
audit() machine-checks the decidable tags of a family on small materialized
instances; tags whose definitions are existential over the parameter space
("... for some parameter values") can pass with a witness but never fail,
and purely declarative tags report not-checkable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import DenseMatrix, MatrixHandle, frobenius_of_dense, materialize
from .errors import ParameterError, TmatError, UnknownPropertyError
from .families import construct, feasible_size, get_family
from .linalg import (
    _cholesky_ok,
    _lu_factor,
    as_dense,
    cond1,
    dense_is_symmetric,
    det_dense,
    inverse,
    is_exact_identity,
    jacobi_eigvals,
    matmul_dense,
    max_abs_identity_residual,
    rank_dense,
)
from .scalars import RATIONAL64, Rational64, as_float, value_is_integer

PROPERTY_TAGS: tuple[str, ...] = (
    "bidiagonal",
    "binary",
    "circulant",
    "complex",
    "correlation",
    "defective",
    "diagdom",
    "eigen",
    "fixedsize",
    "graph",
    "hankel",
    "hessenberg",
    "illcond",
    "indefinite",
    "infdiv",
    "integer",
    "inverse",
    "involutory",
    "nilpotent",
    "nonneg",
    "normal",
    "orthogonal",
    "positive",
    "posdef",
    "random",
    "rankdef",
    "rectangular",
    "regprob",
    "singval",
    "sparse",
    "symmetric",
    "triangular",
    "tridiagonal",
    "toeplitz",
    "totnonneg",
    "totpos",
    "unimodular",
)

# Tags defined as holding "for some parameter values": a failed check at the
# audited parameters means no witness, not a violation.
EXISTENTIAL_TAGS = frozenset(
    {
        "illcond",
        "indefinite",
        "involutory",
        "nilpotent",
        "nonneg",
        "orthogonal",
        "positive",
        "posdef",
        "rectangular",
        "symmetric",
        "totnonneg",
        "totpos",
        "unimodular",
    }
)

# Tags with no machine-checkable content on a single small instance.
DECLARATIVE_TAGS = frozenset({"random", "fixedsize", "graph", "regprob", "infdiv", "defective"})

PASS = "pass"
FAIL = "fail"
NOT_CHECKABLE = "not-checkable"
SKIPPED = "skipped"

AUDIT_SIZE_BOUND = 16
MINOR_BOUND = 6
ILLCOND_THRESHOLD = 1e4


def list_properties() -> list[str]:
    """All 37 tags, in vocabulary order."""
    return list(PROPERTY_TAGS)


def parse_property(name: str) -> str:
    canon = str(name).strip().lower()
    if canon not in PROPERTY_TAGS:
        raise UnknownPropertyError(
            f"unknown property '{name}'; valid properties: {', '.join(PROPERTY_TAGS)}"
        )
    return canon


def properties_of(family_or_handle) -> list[str]:
    """Declared tag list of a family (or of a handle's family), declaration order."""
    if isinstance(family_or_handle, MatrixHandle):
        family_id = family_or_handle.family
    else:
        family_id = family_or_handle
    return list(get_family(family_id).descriptor.tags)


@dataclass(frozen=True)
class AuditFinding:
    tag: str
    verdict: str
    note: str = ""


@dataclass(frozen=True)
class AuditReport:
    family: str
    size: int
    findings: tuple[AuditFinding, ...]

    @property
    def failures(self) -> list[AuditFinding]:
        return [f for f in self.findings if f.verdict == FAIL]


class _AuditContext:
    def __init__(self, handle, dense, tol):
        self.handle = handle
        self.dense = dense
        self.tol = tol
        self._float_rows = None
        self._frob = None

    @property
    def float_rows(self):
        if self._float_rows is None:
            d = self.dense
            self._float_rows = [
                [as_float(d.get(i, j)) for j in range(1, d.cols + 1)]
                for i in range(1, d.rows + 1)
            ]
        return self._float_rows

    @property
    def frob(self):
        if self._frob is None:
            self._frob = frobenius_of_dense(self.dense)
        return self._frob


# -- structural scans -----------------------------------------------------------


def _all_entries(d):
    for j in range(1, d.cols + 1):
        for i in range(1, d.rows + 1):
            yield i, j, d.get(i, j)


def _check_symmetric(ctx):
    return dense_is_symmetric(ctx.dense)


def _check_triangular(ctx):
    d = ctx.dense
    upper = all(v == 0 for i, j, v in _all_entries(d) if i > j)
    if upper:
        return True
    return all(v == 0 for i, j, v in _all_entries(d) if i < j)


def _check_bidiagonal(ctx):
    d = ctx.dense
    upper = all(v == 0 for i, j, v in _all_entries(d) if j not in (i, i + 1))
    if upper:
        return True
    return all(v == 0 for i, j, v in _all_entries(d) if j not in (i, i - 1))


def _check_tridiagonal(ctx):
    return all(v == 0 for i, j, v in _all_entries(ctx.dense) if abs(i - j) > 1)


def _check_hessenberg(ctx):
    d = ctx.dense
    upper = all(v == 0 for i, j, v in _all_entries(d) if i > j + 1)
    if upper:
        return True
    return all(v == 0 for i, j, v in _all_entries(d) if j > i + 1)


def _check_toeplitz(ctx):
    d = ctx.dense
    return all(
        d.get(i, j) == d.get(i + 1, j + 1)
        for i in range(1, d.rows)
        for j in range(1, d.cols)
    )


def _check_hankel(ctx):
    d = ctx.dense
    return all(
        d.get(i, j) == d.get(i + 1, j - 1)
        for i in range(1, d.rows)
        for j in range(2, d.cols + 1)
    )


def _check_circulant(ctx):
    d = ctx.dense
    if d.rows != d.cols:
        return False
    n = d.rows
    return all(
        d.get(i, j) == d.get(1, ((j - i) % n) + 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )


def _check_binary(ctx):
    values = {as_float(v) for _, _, v in _all_entries(ctx.dense)}
    return len(values) <= 2


def _check_integer(ctx):
    return all(value_is_integer(v) for _, _, v in _all_entries(ctx.dense))


def _check_positive(ctx):
    return all(v > 0 for _, _, v in _all_entries(ctx.dense))


def _check_nonneg(ctx):
    return all(v >= 0 for _, _, v in _all_entries(ctx.dense))


def _check_diagdom(ctx):
    rows = ctx.float_rows
    for i, row in enumerate(rows):
        off = sum(abs(v) for j, v in enumerate(row) if j != i)
        if i >= len(row) or abs(row[i]) < off:
            return False
    return True


def _check_sparse(ctx):
    d = ctx.dense
    nnz = sum(1 for _, _, v in _all_entries(d) if v != 0)
    return nnz <= max(3 * max(d.rows, d.cols), (d.rows * d.cols) // 2)


def _check_rectangular(ctx):
    return ctx.dense.rows != ctx.dense.cols


def _check_complex(ctx):
    return any(isinstance(v, complex) for _, _, v in _all_entries(ctx.dense))


# -- numeric checks ---------------------------------------------------------------


def _transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def _matmul_rows(a, b):
    n, m, p = len(a), len(b[0]) if b else 0, len(b)
    return [
        [sum(a[i][k] * b[k][j] for k in range(p)) for j in range(m)]
        for i in range(n)
    ]


def _max_abs(rows):
    return max((abs(v) for row in rows for v in row), default=0.0)


def _residual_vs_identity(rows):
    return max(
        (abs(v - (1.0 if i == j else 0.0)) for i, row in enumerate(rows) for j, v in enumerate(row)),
        default=0.0,
    )


def _check_posdef(ctx):
    if not dense_is_symmetric(ctx.dense):
        return False
    return _cholesky_ok(ctx.float_rows)


def _check_orthogonal(ctx):
    rows = ctx.float_rows
    if ctx.dense.rows != ctx.dense.cols:
        return False
    prod = _matmul_rows(_transpose(rows), rows)
    return _residual_vs_identity(prod) <= ctx.tol * max(1.0, ctx.frob) ** 2


def _check_involutory(ctx):
    rows = ctx.float_rows
    if ctx.dense.rows != ctx.dense.cols:
        return False
    prod = _matmul_rows(rows, rows)
    return _residual_vs_identity(prod) <= ctx.tol * max(1.0, ctx.frob) ** 2


def _check_normal(ctx):
    rows = ctx.float_rows
    if ctx.dense.rows != ctx.dense.cols:
        return False
    t = _transpose(rows)
    left = _matmul_rows(t, rows)
    right = _matmul_rows(rows, t)
    diff = max(
        abs(left[i][j] - right[i][j]) for i in range(len(rows)) for j in range(len(rows))
    )
    return diff <= ctx.tol * max(1.0, ctx.frob) ** 2


def _check_nilpotent(ctx):
    rows = ctx.float_rows
    n = ctx.dense.rows
    if n != ctx.dense.cols:
        return False
    power = rows
    for _ in range(n - 1):
        power = _matmul_rows(power, rows)
    return _max_abs(power) <= ctx.tol * max(1.0, ctx.frob) ** n


def _check_unimodular(ctx):
    if not _check_integer(ctx):
        return False
    if ctx.dense.rows != ctx.dense.cols:
        return False
    det = det_dense(ctx.dense)
    if isinstance(det, Rational64):
        return det == 1 or det == -1
    return abs(abs(det) - 1.0) <= ctx.tol


def _check_rankdef(ctx):
    d = ctx.dense
    if min(d.rows, d.cols) == 0:
        return False
    return rank_dense(d) < min(d.rows, d.cols)


def _check_correlation(ctx):
    d = ctx.dense
    if d.rows != d.cols or not dense_is_symmetric(d):
        return False
    if any(d.get(i, i) != 1 for i in range(1, d.rows + 1)):
        return False
    vals = jacobi_eigvals(ctx.float_rows)
    return all(v >= -ctx.tol * max(1.0, ctx.frob) for v in vals)


def _check_indefinite(ctx):
    d = ctx.dense
    if d.rows != d.cols:
        return False
    if not dense_is_symmetric(d):
        raise TmatError("indefiniteness check requires a symmetric matrix")
    vals = jacobi_eigvals(ctx.float_rows)
    gate = ctx.tol * max(1.0, ctx.frob)
    return any(v > gate for v in vals) and any(v < -gate for v in vals)


# -- minor enumeration -------------------------------------------------------------


def _to_fraction(v):
    if isinstance(v, Rational64):
        return Fraction(v.num, v.den)
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def _exact_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    lu, _, sign, singular = _lu_factor(rows, "exact", 0.0)
    if singular is not None:
        return Fraction(0)
    det = Fraction(sign)
    for i in range(n):
        det *= lu[i][i]
    return det


def enumerate_minors(d: DenseMatrix):
    """Yield (rows, cols, det) for every square minor, exactly."""
    frac_rows = [
        [_to_fraction(d.get(i, j)) for j in range(1, d.cols + 1)]
        for i in range(1, d.rows + 1)
    ]
    max_k = min(d.rows, d.cols)
    for k in range(1, max_k + 1):
        for rows_sel in itertools.combinations(range(d.rows), k):
            for cols_sel in itertools.combinations(range(d.cols), k):
                sub = [[frac_rows[r][c] for c in cols_sel] for r in rows_sel]
                yield rows_sel, cols_sel, _exact_det(sub)


def _check_totpos(ctx):
    return all(det > 0 for _, _, det in enumerate_minors(ctx.dense))


def _check_totnonneg(ctx):
    return all(det >= 0 for _, _, det in enumerate_minors(ctx.dense))


_BOOL_CHECKERS = {
    "symmetric": _check_symmetric,
    "triangular": _check_triangular,
    "bidiagonal": _check_bidiagonal,
    "tridiagonal": _check_tridiagonal,
    "hessenberg": _check_hessenberg,
    "toeplitz": _check_toeplitz,
    "hankel": _check_hankel,
    "circulant": _check_circulant,
    "binary": _check_binary,
    "integer": _check_integer,
    "positive": _check_positive,
    "nonneg": _check_nonneg,
    "diagdom": _check_diagdom,
    "sparse": _check_sparse,
    "rectangular": _check_rectangular,
    "complex": _check_complex,
    "posdef": _check_posdef,
    "orthogonal": _check_orthogonal,
    "involutory": _check_involutory,
    "normal": _check_normal,
    "nilpotent": _check_nilpotent,
    "unimodular": _check_unimodular,
    "rankdef": _check_rankdef,
    "correlation": _check_correlation,
    "indefinite": _check_indefinite,
}


def _check_inverse_tag(ctx) -> AuditFinding:
    h = ctx.handle
    try:
        inv = inverse(h)
        product = matmul_dense(ctx.dense, as_dense(inv))
    except TmatError as exc:
        return AuditFinding("inverse", SKIPPED, str(exc))
    if h.scalar_kind == RATIONAL64:
        ok = is_exact_identity(product)
        note = "A*inv(A) = I exactly" if ok else "A*inv(A) != I"
    else:
        residual = max_abs_identity_residual(product)
        ok = residual <= ctx.tol * max(1.0, ctx.frob)
        note = f"max |A*inv(A) - I| = {residual:.3e}"
    return AuditFinding("inverse", PASS if ok else FAIL, note)


def _check_eigen_tag(ctx) -> AuditFinding:
    h = ctx.handle
    rec = h.record
    if not rec.has_capability("closed_eigvals"):
        return AuditFinding("eigen", NOT_CHECKABLE, "no closed-form spectrum registered")
    closed = rec.eigvals_fn(h)
    n = h.rows
    as_complex = [complex(c) for c in closed]
    all_real = all(abs(z.imag) <= 1e-12 * max(1.0, abs(z)) for z in as_complex)
    if all_real and dense_is_symmetric(ctx.dense):
        oracle = jacobi_eigvals(ctx.float_rows)
        worst = max(
            (abs(c - o) for c, o in zip(sorted(z.real for z in as_complex), oracle)),
            default=0.0,
        )
        ok = worst <= 1e-10 * max(1.0, ctx.frob)
        return AuditFinding("eigen", PASS if ok else FAIL, f"spectral mismatch {worst:.3e}")
    scale = max(1.0, ctx.frob) ** n
    worst = 0.0
    for lam in closed:
        shifted = [
            [complex(v) - (lam if i == j else 0) for j, v in enumerate(row)]
            for i, row in enumerate(ctx.float_rows)
        ]
        lu, _, sign, singular = _lu_factor(shifted, "float64", abs(lam) + ctx.frob + 1.0)
        if singular is not None:
            continue
        det = complex(sign)
        for i in range(n):
            det *= lu[i][i]
        worst = max(worst, abs(det))
    ok = worst <= 1e-8 * scale
    return AuditFinding("eigen", PASS if ok else FAIL, f"max |det(A - lambda I)| = {worst:.3e}")


def _check_illcond(ctx) -> AuditFinding:
    try:
        c = cond1(ctx.handle)
    except TmatError as exc:
        return AuditFinding("illcond", NOT_CHECKABLE, f"advisory: {exc}")
    if c > ILLCOND_THRESHOLD:
        return AuditFinding("illcond", PASS, f"advisory: cond1 = {c:.3e}")
    return AuditFinding(
        "illcond", NOT_CHECKABLE, f"advisory: cond1 = {c:.3e} below {ILLCOND_THRESHOLD:.0e}"
    )


def _audit_tag(tag, ctx, minor_bound) -> AuditFinding:
    if tag in DECLARATIVE_TAGS:
        return AuditFinding(tag, NOT_CHECKABLE, "declarative tag")
    if tag == "illcond":
        return _check_illcond(ctx)
    if tag == "inverse":
        return _check_inverse_tag(ctx)
    if tag == "eigen":
        return _check_eigen_tag(ctx)
    if tag == "singval":
        return AuditFinding(tag, NOT_CHECKABLE, "no closed-form singular values registered")
    if tag in ("totpos", "totnonneg"):
        if max(ctx.dense.rows, ctx.dense.cols) > minor_bound:
            return AuditFinding(
                tag, SKIPPED, f"size over minor-enumeration bound {minor_bound}"
            )
    checker = _BOOL_CHECKERS.get(tag)
    if tag == "totpos":
        checker = _check_totpos
    elif tag == "totnonneg":
        checker = _check_totnonneg
    if checker is None:
        return AuditFinding(tag, NOT_CHECKABLE, "no checker implemented")
    try:
        ok = checker(ctx)
    except TmatError as exc:
        return AuditFinding(tag, SKIPPED, str(exc))
    finding = AuditFinding(tag, PASS if ok else FAIL)
    if finding.verdict == FAIL and tag in EXISTENTIAL_TAGS:
        return AuditFinding(tag, NOT_CHECKABLE, "no witness at the audited parameters")
    return finding


def audit(
    family_id: str,
    sizes: list[int],
    params: dict | None = None,
    *,
    size_bound: int = AUDIT_SIZE_BOUND,
    minor_bound: int = MINOR_BOUND,
    tol: float = 1e-10,
) -> list[AuditReport]:
    """Machine-check every declared tag of a family at each requested size.

    Returns one report per size. Sizes over the audit bound, or infeasible for
    the family, produce skipped verdicts rather than errors.
    """
    rec = get_family(family_id)
    tags = rec.descriptor.tags
    reports = []
    for size in sizes:
        if size < 1:
            raise ParameterError(f"audit sizes must be >= 1, got {size}")
        if size > size_bound:
            findings = tuple(
                AuditFinding(t, SKIPPED, f"size over audit bound {size_bound}") for t in tags
            )
            reports.append(AuditReport(family_id, size, findings))
            continue
        size_params = feasible_size(family_id, size)
        if size_params is None:
            findings = tuple(
                AuditFinding(t, SKIPPED, "size infeasible for this family") for t in tags
            )
            reports.append(AuditReport(family_id, size, findings))
            continue
        merged = dict(size_params)
        merged.update(params or {})
        handle = construct(family_id, merged)
        ctx = _AuditContext(handle, materialize(handle), tol)
        findings = tuple(_audit_tag(tag, ctx, minor_bound) for tag in tags)
        reports.append(AuditReport(family_id, size, findings))
    return reports


def render_audit(reports: list[AuditReport]) -> str:
    """Line-oriented text table: family, size, tag, verdict[, note]."""
    lines = []
    for report in reports:
        for f in report.findings:
            fields = [report.family, str(report.size), f.tag, f.verdict]
            if f.note:
                fields.append(f.note)
            lines.append("\t".join(fields))
    return "\n".join(lines)


def has_failures(reports: list[AuditReport]) -> bool:
    return any(report.failures for report in reports)
