import random

import pytest

from quarticmoduli.field import GF, QQ
from quarticmoduli.matrices import (
    act,
    make_matrix,
    random_graded_automorphism,
    random_matrix,
)
from quarticmoduli.poly import parse_form, parse_poly
from quarticmoduli.strata import (
    BOUNDARY,
    INVALID,
    M00,
    M01,
    M10,
    M11,
    NOT_STABLE,
    classify_res0,
    classify_res1,
    extension_data,
    extract_Z_points,
)


def boundary_matrix():
    # zero-determinant normal form with w = x1
    return make_matrix((3, 2, 2), (1, 1, 1), [
        ["0", "-x2*x1", "x1*x1"],
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ])


def m01_matrix():
    return make_matrix((3, 2, 2), (1, 1, 1), [
        ["x1^2", "0", "0"],
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ])


def m00_matrix():
    return make_matrix((3, 2, 2), (1, 1, 1), [
        ["x0^2", "0", "0"],
        ["x0", "x1", "x2"],
        ["x1", "x2", "x0"],
    ])


def test_boundary_classification():
    report = classify_res0(boundary_matrix())
    assert report.label == BOUNDARY
    assert report.line.poly == parse_poly("x0")
    # point = Z(x0, x1)
    assert report.point == (QQ.zero, QQ.zero, QQ.one)


def test_m01_classification():
    report = classify_res0(m01_matrix())
    assert report.label == M01
    assert report.quartic.poly == parse_poly("x0^2*x1^2")
    assert report.line.poly == parse_poly("x0")
    assert report.cubic.poly == parse_poly("x0*x1^2")


def test_m01_line_divides_every_minor():
    report = classify_res0(m01_matrix())
    for minor in report.scheme_ideal:
        assert minor.poly.try_exact_div(report.line.poly) is not None


def test_m00_classification():
    report = classify_res0(m00_matrix())
    assert report.label == M00
    assert report.quartic
    assert len(report.scheme_ideal) == 3


def test_not_stable_res0():
    m = make_matrix((3, 2, 2), (1, 1, 1), [
        ["x0^2", "0", "0"],
        ["x0", "x1", "0"],
        ["0", "0", "0"],
    ])
    assert classify_res0(m).label == NOT_STABLE


def test_res0_wrong_shape_invalid():
    m = make_matrix((3, 3), (2, 0), [["x0", "x1^3"], ["x1", "x2^3"]])
    assert classify_res0(m).label == INVALID


def test_res1_m10():
    m = make_matrix((3, 3), (2, 0), [["x0", "x1^3"], ["x1", "x2^3"]])
    report = classify_res1(m)
    assert report.label == M10
    assert report.point == (QQ.zero, QQ.zero, QQ.one)
    assert report.quartic.poly == parse_poly("x0*x2^3 - x1^4")
    assert not report.quartic.evaluate(report.point)


def test_res1_m11():
    m = make_matrix((3, 3), (2, 0), [["x0", "0"], ["x1", "x2^3"]])
    report = classify_res1(m)
    assert report.label == M11
    assert report.line.poly == parse_poly("x0")
    assert not report.quartic.evaluate(report.point)


def test_res1_m11_nonsplit_witness():
    # (x0^2 + x1^2) * q: the dividing lines are irrational over QQ
    m = make_matrix((3, 3), (2, 0), [["x0", "-x1*x2^2"], ["x1", "x0*x2^2"]])
    report = classify_res1(m)
    assert report.quartic.poly == parse_poly("x0^2*x2^2 + x1^2*x2^2")
    assert report.label == M11


def test_res1_not_stable():
    m = make_matrix((3, 3), (2, 0), [["x0", "x1^3"], ["2*x0", "x2^3"]])
    assert classify_res1(m).label == NOT_STABLE


def test_res1_zero_determinant_invalid():
    m = make_matrix((3, 3), (2, 0), [["x0", "0"], ["x1", "0"]])
    assert classify_res1(m).label == INVALID


def test_classification_invariant_under_action():
    dom = GF(101)
    rng = random.Random(5)
    for _ in range(25):
        m = random_matrix("res0", dom, rng=rng)
        base = classify_res0(m).label
        g = random_graded_automorphism((3, 2, 2), dom, rng)
        h = random_graded_automorphism((1, 1, 1), dom, rng)
        assert classify_res0(act(g, m, h)).label == base


def test_extract_Z_points_against_scan():
    dom = GF(7)
    m = make_matrix((3, 2, 2), (1, 1, 1), [
        ["x0^2", "0", "0"],
        ["x0", "x1", "x2"],
        ["x1", "x2", "x0"],
    ], domain=dom)
    report = classify_res0(m)
    assert report.label == M00
    z = extract_Z_points(report)
    # brute-force scan of the projective plane over F_7
    minors = report.scheme_ideal
    found = set()
    reps = [(1, 0, 0)] + [(a, 1, 0) for a in range(7)] + [
        (a, b, 1) for a in range(7) for b in range(7)
    ]
    for rep in reps:
        p = tuple(dom.scalar(c) for c in rep)
        if all(not mm.evaluate(p) for mm in minors):
            found.add(rep)
    def key(p):
        pivot = max(i for i in range(3) if p[i])
        inv = p[pivot].inverse()
        return tuple((c * inv).value for c in p)
    assert {key(p) for p, _ in z.points} == {
        key(tuple(dom.scalar(c) for c in rep)) for rep in found
    }
    assert sum(mult for _, mult in z.points) + z.nonsplit_degree == 3


def test_extract_Z_points_prescribed_zeros():
    # minors of this block vanish exactly on the coordinate points
    m = make_matrix((3, 2, 2), (1, 1, 1), [
        ["x0^2", "x1^2", "x2^2"],
        ["x0", "x1", "0"],
        ["0", "x1", "x2"],
    ])
    report = classify_res0(m)
    assert report.label == M00
    z = extract_Z_points(report)
    coords = {
        tuple(1 if i == j else 0 for j in range(3)) for i in range(3)
    }
    got = {
        tuple(int(bool(c.value)) for c in p) for p, _ in z.points
    }
    assert got == coords


def test_extract_Z_requires_m00():
    with pytest.raises(ValueError):
        extract_Z_points(classify_res0(m01_matrix()))


def test_extension_data():
    line, cubic = extension_data(classify_res0(m01_matrix()))
    assert line.poly == parse_poly("x0")
    assert cubic.poly == parse_poly("x0*x1^2")
    with pytest.raises(ValueError):
        extension_data(classify_res0(m00_matrix()))


def test_report_serialization():
    report = classify_res0(m01_matrix())
    data = report.to_json_dict()
    assert data["label"] == M01
    assert data["quartic"] == "x0^2*x1^2"
    assert data["line"] == "x0"
