"""Builtin matrix family catalog.

Nineteen classic parametrized test families, each with its element formula
(1-based indices), declared property tags, and any closed-form capabilities
(determinant, inverse, spectrum, O(1) predicates). Registration order here
defines the canonical listing order.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb, cos, isqrt, pi, sqrt

from .core import DenseMatrix
from .errors import ParameterError, SingularMatrixError
from .families import FamilyDescriptor, ParamSpec, _set_builtin_ids, construct, register_family
from .scalars import FLOAT64, RATIONAL64, Rational64, from_int, one, ratio, zero


def _dense_from_fn(n, kind, fn):
    data = [fn(i, j) for j in range(1, n + 1) for i in range(1, n + 1)]
    return DenseMatrix(n, n, data, kind)


def _exact(value) -> Fraction:
    # Fraction view of a scalar parameter; closed forms compute with unbounded
    # integers internally, only the final value is range-checked
    if isinstance(value, Rational64):
        return value.as_fraction()
    return Fraction(value)


def _from_fraction(kind, value: Fraction):
    if kind == RATIONAL64:
        return Rational64(value.numerator, value.denominator)
    return float(value)


def _square_dims(params):
    return (params["n"], params["n"])


# -- hilbert ------------------------------------------------------------------
# a_ij = 1/(i+j-1)


def _hilbert_element(params, i, j, kind):
    return ratio(kind, 1, i + j - 1)


def _hilbert_validate(params, kind):
    m = params.get("m")
    n = params.get("n")
    if m is None and n is None:
        raise ParameterError("hilbert requires m or n")
    if m is None:
        m = n
    if n is None:
        n = m
    return {"m": m, "n": n}


def _superfactorial(n):
    # prod_{k=1}^{n-1} k!
    p = 1
    f = 1
    for k in range(1, n):
        f *= k
        p *= f
    return p


def _inv_hilbert_det_int(n):
    # det of the inverse Hilbert matrix: c_{2n} / c_n^4, always an integer
    c2n = _superfactorial(2 * n)
    cn = _superfactorial(n)
    value = Fraction(c2n, cn**4)
    assert value.denominator == 1
    return value.numerator


def _hilbert_det(h):
    n = h.rows
    if n == 0:
        return one(h.scalar_kind)
    d = _inv_hilbert_det_int(n)
    if h.scalar_kind == RATIONAL64:
        return Rational64(1, d)
    return float(Fraction(1, d))


def _hilbert_inverse(h):
    return construct("inversehilbert", n=h.rows, scalar_kind=h.scalar_kind)


_HILBERT_PREDICATES = {
    "symmetric": lambda h: h.rows == h.cols,
    "posdef": lambda h: h.rows == h.cols,
    "diagonal": lambda h: h.rows == 0 or h.cols == 0 or (h.rows <= 1 and h.cols <= 1),
}


# -- inversehilbert -----------------------------------------------------------
# (A)_ij = (-1)^(i+j) (i+j-1) C(n+i-1, n-j) C(n+j-1, n-i) C(i+j-2, i-1)^2


def _inversehilbert_element(params, i, j, kind):
    n = params["n"]
    v = (
        (-1) ** (i + j)
        * (i + j - 1)
        * comb(n + i - 1, n - j)
        * comb(n + j - 1, n - i)
        * comb(i + j - 2, i - 1) ** 2
    )
    return from_int(kind, v)


def _inversehilbert_det(h):
    n = h.rows
    if n == 0:
        return one(h.scalar_kind)
    d = _inv_hilbert_det_int(n)
    if h.scalar_kind == RATIONAL64:
        return Rational64(d)
    return float(d)


def _inversehilbert_inverse(h):
    return construct("hilbert", n=h.rows, scalar_kind=h.scalar_kind)


# -- cauchy -------------------------------------------------------------------
# a_ij = 1/(x_i + y_j), precondition x_i + y_j != 0


def _cauchy_element(params, i, j, kind):
    x, y = params["x"], params["y"]
    s = x[i - 1] + y[j - 1]
    if kind == RATIONAL64:
        return Rational64(1) / s
    return 1.0 / s


def _cauchy_validate(params, kind):
    x = params.get("x")
    y = params.get("y")
    n = params.get("n")
    if x is None:
        if n is None:
            raise ParameterError("cauchy requires n or generator vector x")
        x = tuple(from_int(kind, k) for k in range(1, n + 1))
    if y is None:
        y = x
    negated = {-v for v in y}
    bad = sorted(i + 1 for i, v in enumerate(x) if v in negated)
    if bad:
        raise ParameterError(
            f"cauchy generators collide: x_i + y_j = 0 for x indices {bad}"
        )
    return {"x": x, "y": y}


def _cauchy_kind(given):
    vectors = [given.get("x"), given.get("y")]
    if all(v is None for v in vectors):
        return RATIONAL64
    for vec in vectors:
        if vec is None:
            continue
        for v in vec:
            if isinstance(v, float):
                return FLOAT64
    return RATIONAL64


def _cauchy_det(h):
    # prod_{i<j} (x_j - x_i)(y_j - y_i) / prod_{i,j} (x_i + y_j)
    kind = h.scalar_kind
    if kind == RATIONAL64:
        x = [_exact(v) for v in h.params["x"]]
        y = [_exact(v) for v in h.params["y"]]
        num, den = Fraction(1), Fraction(1)
    else:
        x, y = list(h.params["x"]), list(h.params["y"])
        num, den = 1.0, 1.0
    n = h.rows
    for j in range(n):
        for i in range(j):
            num = num * (x[j] - x[i]) * (y[j] - y[i])
    for xi in x:
        for yj in y:
            den = den * (xi + yj)
    value = num / den
    return _from_fraction(kind, value) if kind == RATIONAL64 else value


# -- minij --------------------------------------------------------------------
# a_ij = min(i, j)


def _minij_element(params, i, j, kind):
    return from_int(kind, min(i, j))


def _minij_eigvals(h):
    n = h.rows
    return sorted(0.25 / cos(i * pi / (2 * n + 1)) ** 2 for i in range(1, n + 1))


def _minij_inverse(h):
    # tridiagonal: diag 2 except (n,n) = 1, off-diagonals -1
    n = h.rows
    kind = h.scalar_kind

    def entry(i, j):
        if i == j:
            return from_int(kind, 1 if i == n else 2)
        if abs(i - j) == 1:
            return from_int(kind, -1)
        return zero(kind)

    return _dense_from_fn(n, kind, entry)


_MINIJ_PREDICATES = {
    "symmetric": lambda h: True,
    "posdef": lambda h: True,
    "diagonal": lambda h: h.rows <= 1,
}


# -- clement ------------------------------------------------------------------
# nonsymmetric: a_{i,i+1} = i, a_{i+1,i} = n-i; symmetric variant replaces both
# off-diagonals with sqrt(i(n-i))


def _clement_element(params, i, j, kind):
    n = params["n"]
    if params["symmetric"]:
        if j == i + 1:
            return sqrt(i * (n - i))
        if i == j + 1:
            return sqrt(j * (n - j))
        return 0.0
    if j == i + 1:
        return from_int(kind, i)
    if i == j + 1:
        return from_int(kind, n - j)
    return zero(kind)


def _clement_validate(params, kind):
    if params["symmetric"] and kind == RATIONAL64:
        raise ParameterError(
            "the symmetric clement variant has irrational entries; use float64"
        )
    return params


def _clement_eigvals(h):
    n = h.rows
    return sorted(float(-(n - 1) + 2 * k) for k in range(n))


# -- lehmer -------------------------------------------------------------------
# a_ij = min(i,j)/max(i,j)


def _lehmer_element(params, i, j, kind):
    return ratio(kind, min(i, j), max(i, j))


def _lehmer_inverse(h):
    # tridiagonal: (i,i) = 4i^3/(4i^2-1) for i<n, (n,n) = n^2/(2n-1),
    # (i,i+1) = -i(i+1)/(2i+1)
    n = h.rows
    kind = h.scalar_kind

    def entry(i, j):
        if i == j:
            if i == n:
                return ratio(kind, n * n, 2 * n - 1)
            return ratio(kind, 4 * i**3, 4 * i * i - 1)
        if j == i + 1:
            return ratio(kind, -i * (i + 1), 2 * i + 1)
        if i == j + 1:
            return ratio(kind, -j * (j + 1), 2 * j + 1)
        return zero(kind)

    return _dense_from_fn(n, kind, entry)


# -- pei ----------------------------------------------------------------------
# A = alpha*I + ones


def _pei_element(params, i, j, kind):
    a = params["alpha"]
    if i == j:
        return a + one(kind)
    return one(kind)


def _pei_eigvals(h):
    n = h.rows
    a = float(h.params["alpha"])
    return sorted([a] * (n - 1) + [a + n])


def _pei_inverse(h):
    # (1/alpha)(I - J/(alpha+n)), defined iff alpha not in {0, -n}
    n = h.rows
    a = h.params["alpha"]
    kind = h.scalar_kind
    if a == 0 or a == -n:
        raise SingularMatrixError(f"pei inverse is undefined for alpha in {{0, -{n}}}")
    off = -(one(kind) / (a * (a + n)))
    diag = (a + n - one(kind)) / (a * (a + n))
    return _dense_from_fn(n, kind, lambda i, j: diag if i == j else off)


def _pei_det(h):
    n = h.rows
    kind = h.scalar_kind
    if n == 0:
        return one(kind)
    if kind == RATIONAL64:
        a = _exact(h.params["alpha"])
        return _from_fraction(kind, a ** (n - 1) * (a + n))
    a = h.params["alpha"]
    return a ** (n - 1) * (a + n)


# -- pascal ---------------------------------------------------------------------
# a_ij = C(i+j-2, i-1)


def _pascal_element(params, i, j, kind):
    return from_int(kind, comb(i + j - 2, i - 1))


# -- kms ----------------------------------------------------------------------
# a_ij = rho^|i-j|


def _kms_element(params, i, j, kind):
    return params["rho"] ** abs(i - j)


def _kms_det(h):
    n = h.rows
    kind = h.scalar_kind
    if n == 0:
        return one(kind)
    if kind == RATIONAL64:
        rho = _exact(h.params["rho"])
        return _from_fraction(kind, (1 - rho * rho) ** (n - 1))
    rho = h.params["rho"]
    return (1.0 - rho * rho) ** (n - 1)


def _kms_inverse(h):
    # tridiagonal: corners 1/(1-rho^2), interior diag (1+rho^2)/(1-rho^2),
    # off-diagonals -rho/(1-rho^2); defined iff rho^2 != 1
    n = h.rows
    rho = h.params["rho"]
    kind = h.scalar_kind
    rho2 = rho * rho
    if rho2 == 1:
        raise SingularMatrixError("kms with rho^2 = 1 is singular")
    if n == 1:
        return DenseMatrix(1, 1, [one(kind)], kind)
    denom = one(kind) - rho2
    corner = one(kind) / denom
    interior = (one(kind) + rho2) / denom
    off = -(rho / denom)

    def entry(i, j):
        if i == j:
            return corner if i in (1, n) else interior
        if abs(i - j) == 1:
            return off
        return zero(kind)

    return _dense_from_fn(n, kind, entry)


# -- moler --------------------------------------------------------------------
# a_ii = 1 + (i-1) alpha^2, a_ij = alpha + (min(i,j)-1) alpha^2; A = T'T with
# T = triw(n, alpha), hence det = 1


def _moler_element(params, i, j, kind):
    a = params["alpha"]
    a2 = a * a
    if i == j:
        return one(kind) + (i - 1) * a2
    return a + (min(i, j) - 1) * a2


# -- forsythe -------------------------------------------------------------------
# Jordan block with lambda on the diagonal, unit superdiagonal, and alpha in
# the (n,1) corner; for n = 1 both positions coincide and the entry is
# lambda + alpha.


def _forsythe_element(params, i, j, kind):
    n = params["n"]
    lam = params["lambda"]
    alpha = params["alpha"]
    if n == 1:
        return lam + alpha
    if i == j:
        return lam
    if j == i + 1:
        return one(kind)
    if i == n and j == 1:
        return alpha
    return zero(kind)


def _forsythe_eigvals(h):
    n = h.rows
    lam = complex(float(h.params["lambda"]))
    alpha = complex(float(h.params["alpha"]))
    if n == 0:
        return []
    r = alpha ** (1.0 / n)
    vals = [lam + r * cmath.exp(2j * pi * k / n) for k in range(n)]
    return sorted(vals, key=lambda z: (z.real, z.imag))


def _forsythe_inverse(h):
    n = h.rows
    lam = h.params["lambda"]
    alpha = h.params["alpha"]
    kind = h.scalar_kind
    if lam != 0:
        return None  # no closed form; generic fallback
    if alpha == 0:
        raise SingularMatrixError("forsythe with lambda = 0 and alpha = 0 is nilpotent")
    inv_alpha = one(kind) / alpha

    def entry(i, j):
        if i == 1 and j == n:
            return inv_alpha
        if n > 1 and i == j + 1:
            return one(kind)
        return zero(kind)

    return _dense_from_fn(n, kind, entry)


# -- jordbloc -------------------------------------------------------------------


def _jordbloc_element(params, i, j, kind):
    if i == j:
        return params["lambda"]
    if j == i + 1:
        return one(kind)
    return zero(kind)


def _jordbloc_eigvals(h):
    return [float(h.params["lambda"])] * h.rows


def _jordbloc_det(h):
    kind = h.scalar_kind
    if h.rows == 0:
        return one(kind)
    if kind == RATIONAL64:
        return _from_fraction(kind, _exact(h.params["lambda"]) ** h.rows)
    return h.params["lambda"] ** h.rows


# -- frank --------------------------------------------------------------------
# a_ij = n+1-max(i,j) if j >= i-1, else 0


def _frank_element(params, i, j, kind):
    n = params["n"]
    if j >= i - 1:
        return from_int(kind, n + 1 - max(i, j))
    return zero(kind)


# -- lotkin -------------------------------------------------------------------
# row 1 all ones, rows i >= 2 as the Hilbert matrix


def _lotkin_element(params, i, j, kind):
    if i == 1:
        return one(kind)
    return ratio(kind, 1, i + j - 1)


# -- grcar --------------------------------------------------------------------
# a_ij = -1 on the subdiagonal, 1 on the diagonal and the k superdiagonals


def _grcar_element(params, i, j, kind):
    if i == j + 1:
        return from_int(kind, -1)
    if i <= j <= i + params["k"]:
        return one(kind)
    return zero(kind)


# -- wilkinson ------------------------------------------------------------------
# symmetric tridiagonal: d_i = |i - (n+1)/2|, off-diagonals 1


def _wilkinson_element(params, i, j, kind):
    n = params["n"]
    if i == j:
        if kind == RATIONAL64:
            return Rational64(abs(2 * i - n - 1), 2)
        return abs(i - (n + 1) / 2)
    if abs(i - j) == 1:
        return one(kind)
    return zero(kind)


# -- poisson --------------------------------------------------------------------
# block tridiagonal I (x) T + T (x) I with T = tridiag(-1, 2, -1); the grid
# parameter n yields an n^2 x n^2 matrix


def _trid(a, b):
    if a == b:
        return 2
    if abs(a - b) == 1:
        return -1
    return 0


def _poisson_element(params, i, j, kind):
    k = params["n"]
    r1, r2 = divmod(i - 1, k)
    c1, c2 = divmod(j - 1, k)
    v = 0
    if r1 == c1:
        v += _trid(r2, c2)
    if r2 == c2:
        v += _trid(r1, c1)
    return from_int(kind, v)


def _poisson_dims(params):
    return (params["n"] ** 2, params["n"] ** 2)


def _poisson_eigvals(h):
    k = h.params["n"]
    vals = [
        4 - 2 * cos(i * pi / (k + 1)) - 2 * cos(j * pi / (k + 1))
        for i in range(1, k + 1)
        for j in range(1, k + 1)
    ]
    return sorted(vals)


def _poisson_size_to_params(requested):
    k = isqrt(requested)
    if k * k != requested:
        return None
    return {"n": k}


# -- companion ------------------------------------------------------------------
# bottom-row form for the monic polynomial with coefficient vector v:
# a_{i,i+1} = 1 for i < n, a_{n,j} = -v_j


def _companion_element(params, i, j, kind):
    v = params["v"]
    n = len(v)
    if i == n:
        return -v[j - 1]
    if j == i + 1:
        return one(kind)
    return zero(kind)


def _companion_validate(params, kind):
    v = params.get("v")
    if v is None:
        n = params.get("n")
        if n is None:
            raise ParameterError("companion requires n or coefficient vector v")
        v = tuple(one(kind) for _ in range(n))
    return {"v": v}


def _companion_dims(params):
    n = len(params["v"])
    return (n, n)


def _companion_det(h):
    n = h.rows
    if n == 0:
        return one(h.scalar_kind)
    v1 = h.params["v"][0]
    return -v1 if n % 2 else v1


# -- triw ---------------------------------------------------------------------
# unit upper triangular with alpha on the first k superdiagonals


def _triw_element(params, i, j, kind):
    if i == j:
        return one(kind)
    if i < j <= i + params["k"]:
        return params["alpha"]
    return zero(kind)


def _unit_det(h):
    return one(h.scalar_kind)


# -- registration ---------------------------------------------------------------


def _n_param():
    return ParamSpec("n", "dim")


def register_builtins() -> None:
    register_family(
        FamilyDescriptor(
            id="hilbert",
            params=(ParamSpec("m", "dim", None), ParamSpec("n", "dim", None)),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "inverse", "illcond", "posdef", "totpos"),
            capabilities=frozenset({"closed_inverse", "closed_det", "closed_predicates"}),
        ),
        _hilbert_element,
        dims_fn=lambda p: (p["m"], p["n"]),
        validate_fn=_hilbert_validate,
        det_fn=_hilbert_det,
        inverse_fn=_hilbert_inverse,
        predicates=_HILBERT_PREDICATES,
    )

    register_family(
        FamilyDescriptor(
            id="inversehilbert",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "inverse", "illcond", "posdef", "integer"),
            capabilities=frozenset({"closed_inverse", "closed_det"}),
        ),
        _inversehilbert_element,
        det_fn=_inversehilbert_det,
        inverse_fn=_inversehilbert_inverse,
    )

    register_family(
        FamilyDescriptor(
            id="cauchy",
            params=(
                ParamSpec("n", "dim", None),
                ParamSpec("x", "vector", None),
                ParamSpec("y", "vector", None),
            ),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "posdef", "inverse", "illcond", "infdiv"),
            capabilities=frozenset({"closed_det"}),
        ),
        _cauchy_element,
        dims_fn=lambda p: (len(p["x"]), len(p["y"])),
        validate_fn=_cauchy_validate,
        scalar_kind_fn=_cauchy_kind,
        det_fn=_cauchy_det,
    )

    register_family(
        FamilyDescriptor(
            id="minij",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "posdef", "eigen", "inverse", "integer"),
            capabilities=frozenset(
                {"closed_eigvals", "closed_inverse", "closed_predicates"}
            ),
        ),
        _minij_element,
        eigvals_fn=_minij_eigvals,
        inverse_fn=_minij_inverse,
        predicates=_MINIJ_PREDICATES,
    )

    register_family(
        FamilyDescriptor(
            id="clement",
            params=(_n_param(), ParamSpec("symmetric", "bool", False)),
            default_scalar_kind=FLOAT64,
            tags=("tridiagonal", "eigen", "integer"),
            capabilities=frozenset({"closed_eigvals"}),
        ),
        _clement_element,
        validate_fn=_clement_validate,
        eigvals_fn=_clement_eigvals,
    )

    register_family(
        FamilyDescriptor(
            id="lehmer",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "posdef", "inverse", "totnonneg"),
            capabilities=frozenset({"closed_inverse"}),
        ),
        _lehmer_element,
        inverse_fn=_lehmer_inverse,
    )

    register_family(
        FamilyDescriptor(
            id="pei",
            params=(_n_param(), ParamSpec("alpha", "scalar", 1)),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "inverse", "posdef", "illcond"),
            capabilities=frozenset({"closed_eigvals", "closed_inverse", "closed_det"}),
        ),
        _pei_element,
        eigvals_fn=_pei_eigvals,
        inverse_fn=_pei_inverse,
        det_fn=_pei_det,
    )

    register_family(
        FamilyDescriptor(
            id="pascal",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=(
                "symmetric",
                "posdef",
                "eigen",
                "inverse",
                "integer",
                "totpos",
                "unimodular",
                "illcond",
            ),
            capabilities=frozenset({"closed_det"}),
        ),
        _pascal_element,
        det_fn=_unit_det,
    )

    register_family(
        FamilyDescriptor(
            id="kms",
            params=(_n_param(), ParamSpec("rho", "scalar", 0.5)),
            default_scalar_kind=FLOAT64,
            tags=("symmetric", "posdef", "inverse", "toeplitz"),
            capabilities=frozenset({"closed_inverse", "closed_det"}),
        ),
        _kms_element,
        inverse_fn=_kms_inverse,
        det_fn=_kms_det,
    )

    register_family(
        FamilyDescriptor(
            id="moler",
            params=(_n_param(), ParamSpec("alpha", "scalar", -1)),
            default_scalar_kind=FLOAT64,
            tags=("symmetric", "posdef", "illcond"),
            capabilities=frozenset({"closed_det"}),
        ),
        _moler_element,
        det_fn=_unit_det,
    )

    register_family(
        FamilyDescriptor(
            id="forsythe",
            params=(
                _n_param(),
                ParamSpec("alpha", "scalar", 1e-10),
                ParamSpec("lambda", "scalar", 0),
            ),
            default_scalar_kind=FLOAT64,
            tags=("eigen", "inverse", "illcond"),
            capabilities=frozenset({"closed_eigvals", "closed_inverse"}),
        ),
        _forsythe_element,
        eigvals_fn=_forsythe_eigvals,
        inverse_fn=_forsythe_inverse,
    )

    register_family(
        FamilyDescriptor(
            id="jordbloc",
            params=(_n_param(), ParamSpec("lambda", "scalar", 1)),
            default_scalar_kind=FLOAT64,
            tags=("eigen", "bidiagonal", "triangular", "toeplitz", "defective", "nilpotent"),
            capabilities=frozenset({"closed_eigvals", "closed_det"}),
        ),
        _jordbloc_element,
        eigvals_fn=_jordbloc_eigvals,
        det_fn=_jordbloc_det,
    )

    register_family(
        FamilyDescriptor(
            id="frank",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=("hessenberg", "illcond", "integer"),
            capabilities=frozenset({"closed_det"}),
        ),
        _frank_element,
        det_fn=_unit_det,
    )

    register_family(
        FamilyDescriptor(
            id="lotkin",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=("inverse", "illcond", "eigen"),
        ),
        _lotkin_element,
    )

    register_family(
        FamilyDescriptor(
            id="grcar",
            params=(_n_param(), ParamSpec("k", "dim", 3)),
            default_scalar_kind=FLOAT64,
            tags=("toeplitz", "hessenberg", "integer"),
        ),
        _grcar_element,
    )

    register_family(
        FamilyDescriptor(
            id="wilkinson",
            params=(_n_param(),),
            default_scalar_kind=FLOAT64,
            tags=("symmetric", "tridiagonal"),
        ),
        _wilkinson_element,
    )

    register_family(
        FamilyDescriptor(
            id="poisson",
            params=(_n_param(),),
            default_scalar_kind=RATIONAL64,
            tags=("symmetric", "posdef", "eigen", "sparse", "integer"),
            capabilities=frozenset({"closed_eigvals"}),
        ),
        _poisson_element,
        dims_fn=_poisson_dims,
        eigvals_fn=_poisson_eigvals,
        size_to_params=_poisson_size_to_params,
    )

    register_family(
        FamilyDescriptor(
            id="companion",
            params=(ParamSpec("n", "dim", None), ParamSpec("v", "vector", None)),
            default_scalar_kind=FLOAT64,
            tags=("hessenberg", "sparse", "integer"),
            capabilities=frozenset({"closed_det"}),
        ),
        _companion_element,
        dims_fn=_companion_dims,
        validate_fn=_companion_validate,
        det_fn=_companion_det,
    )

    register_family(
        FamilyDescriptor(
            id="triw",
            params=(
                _n_param(),
                ParamSpec("alpha", "scalar", -1),
                ParamSpec("k", "dim", lambda p: max(p["n"] - 1, 0)),
            ),
            default_scalar_kind=RATIONAL64,
            tags=("triangular", "illcond", "integer", "unimodular"),
            capabilities=frozenset({"closed_det"}),
        ),
        _triw_element,
        det_fn=_unit_det,
    )

    from .families import list_families

    _set_builtin_ids(list_families())
