import pytest

import tmat
from tmat import (
    FamilyDescriptor,
    ParamSpec,
    UnknownFamilyError,
    UnknownPropertyError,
    audit,
    construct,
    list_properties,
    parse_property,
    properties_of,
    register_family,
    render_audit,
)
from tmat.properties import (
    EXISTENTIAL_TAGS,
    PROPERTY_TAGS,
    enumerate_minors,
    has_failures,
)

from oracles import frac_rows, naive_symmetric, naive_toeplitz, naive_tridiagonal, to_fraction


def test_vocabulary_size_and_order():
    props = list_properties()
    assert len(props) == 37
    assert props[0] == "bidiagonal"
    assert props[-1] == "unimodular"
    assert props == list(PROPERTY_TAGS)
    assert "symmetric" in props


def test_parse_property_case_insensitive():
    assert parse_property("SYMMETRIC") == "symmetric"
    assert parse_property(" TotPos ") == "totpos"
    with pytest.raises(UnknownPropertyError, match="valid properties"):
        parse_property("shiny")


def test_properties_of_examples():
    assert properties_of("hilbert") == ["symmetric", "inverse", "illcond", "posdef", "totpos"]
    handle = construct("hilbert", n=5)
    assert properties_of(handle) == properties_of("hilbert")
    with pytest.raises(UnknownFamilyError):
        properties_of("wathen")


def test_properties_of_sumij():
    from tmat.sumij import install_sumij

    install_sumij()
    assert properties_of("sumij") == ["symmetric", "integer", "positive", "rankdef"]


def test_vocabulary_closure():
    vocab = set(list_properties())
    for family in tmat.list_families():
        assert set(properties_of(family)) <= vocab


def _verdicts(family, size, params=None):
    (report,) = audit(family, [size], params)
    assert [f.tag for f in report.findings] == properties_of(family)
    return {f.tag: f.verdict for f in report.findings}


def test_audit_hilbert_example():
    verdicts = _verdicts("hilbert", 4)
    for tag in ("symmetric", "inverse", "posdef", "totpos", "illcond"):
        assert verdicts[tag] == "pass"


def test_audit_jordbloc_example():
    verdicts = _verdicts("jordbloc", 4, {"lambda": 0})
    assert verdicts["nilpotent"] == "pass"
    assert verdicts["eigen"] == "pass"
    assert verdicts["defective"] == "not-checkable"


def test_audit_jordbloc_default_shift_has_no_nilpotent_witness():
    verdicts = _verdicts("jordbloc", 4)
    assert verdicts["nilpotent"] == "not-checkable"


def test_audit_minij_eigen():
    assert _verdicts("minij", 6)["eigen"] == "pass"


def test_audit_lotkin_eigen_not_checkable():
    # the eigen tag is declarative for lotkin: no closed-form routine exists
    verdicts = _verdicts("lotkin", 4)
    assert verdicts["eigen"] == "not-checkable"
    assert verdicts["inverse"] == "pass"


def test_audit_size_over_bound_skips():
    (report,) = audit("hilbert", [32])
    assert all(f.verdict == "skipped" for f in report.findings)


def test_audit_infeasible_size_skips():
    (report,) = audit("poisson", [3])
    assert all(f.verdict == "skipped" for f in report.findings)


def test_audit_minor_bound():
    (report,) = audit("hilbert", [8])
    verdicts = {f.tag: f.verdict for f in report.findings}
    assert verdicts["totpos"] == "skipped"
    assert verdicts["symmetric"] == "pass"


def test_audit_unknown_family():
    with pytest.raises(UnknownFamilyError):
        audit("wathen", [4])


def test_audit_rejects_nonpositive_sizes():
    with pytest.raises(tmat.ParameterError):
        audit("hilbert", [0])


def test_full_builtin_audit_is_fail_free():
    for family in tmat.list_families():
        reports = audit(family, [1, 2, 3, 4, 5])
        assert not has_failures(reports), render_audit(reports)


def test_mis_tagged_family_fails_audit():
    register_family(
        FamilyDescriptor(
            id="nottridiag",
            params=(ParamSpec("n", "dim"),),
            default_scalar_kind=tmat.FLOAT64,
            tags=("tridiagonal",),
        ),
        lambda p, i, j, k: 1.0,
    )
    reports = audit("nottridiag", [4])
    assert has_failures(reports)


def test_existential_mistag_softens_to_not_checkable():
    register_family(
        FamilyDescriptor(
            id="notposdef",
            params=(ParamSpec("n", "dim"),),
            default_scalar_kind=tmat.FLOAT64,
            tags=("posdef",),
        ),
        lambda p, i, j, k: -1.0 if i == j else 0.0,
    )
    (report,) = audit("notposdef", [3])
    assert report.findings[0].verdict == "not-checkable"
    assert "posdef" in EXISTENTIAL_TAGS


@pytest.mark.parametrize("family", tuple(tmat.list_families()))
def test_audit_scan_soundness_vs_independent_scans(family):
    size = 5 if tmat.feasible_size(family, 5) is not None else 4
    params = tmat.feasible_size(family, size)
    h = construct(family, params)
    rows = frac_rows(h)
    verdicts = _verdicts(family, size)
    tags = set(properties_of(family))
    if "symmetric" in tags:
        assert (verdicts["symmetric"] == "pass") == naive_symmetric(rows)
    if "toeplitz" in tags:
        assert (verdicts["toeplitz"] == "pass") == naive_toeplitz(rows)
    if "tridiagonal" in tags:
        assert (verdicts["tridiagonal"] == "pass") == naive_tridiagonal(rows)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_minor_enumeration_consistency(n):
    h = construct("hilbert", n=n)
    d = tmat.materialize(h)
    minors = list(enumerate_minors(d))
    # 1x1 minors are the entries themselves
    singletons = {
        (r[0], c[0]): det for r, c, det in minors if len(r) == 1
    }
    for i in range(n):
        for j in range(n):
            assert singletons[(i, j)] == to_fraction(d.get(i + 1, j + 1))
    # the full n x n minor is the determinant
    full = [det for r, c, det in minors if len(r) == n]
    assert full == [tmat.determinant(h).as_fraction()]


def test_render_audit_format():
    reports = audit("minij", [3])
    lines = render_audit(reports).splitlines()
    assert len(lines) == len(properties_of("minij"))
    first = lines[0].split("\t")
    assert first[0] == "minij"
    assert first[1] == "3"
    assert first[2] in PROPERTY_TAGS
    assert first[3] in ("pass", "fail", "not-checkable", "skipped")
