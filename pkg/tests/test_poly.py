from fractions import Fraction

import pytest

from quarticmoduli.field import GF, QQ
from quarticmoduli.poly import (
    BinaryForm,
    Form,
    MultiPoly,
    ParseError,
    linear_rank,
    monomials_of_degree,
    parse_form,
    parse_poly,
)


def test_parse_basic_form():
    f = parse_form("x0^2 - x1*x2")
    assert f.degree == 2
    assert len(f.poly.terms) == 2


def test_parse_zero_accepts_any_degree():
    f = parse_form("0", expected_degree=5)
    assert not f
    assert f.degree == 5


def test_parse_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        parse_form("x0 + x1^2")


def test_parse_rejects_degree_mismatch():
    with pytest.raises(ValueError):
        parse_form("x0^2", expected_degree=3)


def test_parse_syntax_error():
    with pytest.raises(ParseError):
        parse_poly("x0 + * x1")
    with pytest.raises(ParseError):
        parse_poly("x3")


def test_parse_rational_coefficients():
    f = parse_poly("-2/5*x0 + 3*x1")
    assert f.terms[(1, 0, 0)].value == Fraction(-2, 5)


def test_serialize_roundtrip():
    texts = [
        "x0^2 - x1*x2",
        "3*x0^4 + 1/2*x1^4 - x2^4",
        "x0*x1*x2",
        "0",
    ]
    for text in texts:
        f = parse_poly(text)
        assert parse_poly(f.serialize()) == f


def test_serialize_graded_lex_order():
    f = parse_poly("x2^2 + x0*x1 + x0^3")
    assert f.serialize() == "x0^3 + x0*x1 + x2^2"


def test_arithmetic_exact():
    a = parse_poly("x0 + x1")
    b = parse_poly("x0 - x1")
    assert (a * b).serialize() == "x0^2 - x1^2"
    assert a + b == parse_poly("2*x0")
    assert a - a == MultiPoly.zero(QQ)


def test_exact_division():
    f = parse_poly("x0^2 - x1^2")
    g = parse_poly("x0 + x1")
    q = f.exact_div(g)
    assert q == parse_poly("x0 - x1")
    assert f.try_exact_div(parse_poly("x2")) is None


def test_evaluate_examples():
    f = parse_form("x0^2")
    assert not f.evaluate((QQ.zero, QQ.one, QQ.zero))
    g = parse_form("x0*x1 + x2^2")
    assert g.evaluate((QQ.one, QQ.one, QQ.zero)).value == 1
    # the limit-example quartic vanishes at its marked point
    h = parse_form("x0^2*x1^2 - x1^2*x2^2")
    assert not h.evaluate((QQ.zero, QQ.one, QQ.zero))


def test_evaluate_rejects_zero_point():
    f = parse_form("x0^2")
    with pytest.raises(ValueError):
        f.evaluate((QQ.zero, QQ.zero, QQ.zero))


def test_evaluate_scaling_invariance():
    f = parse_form("x0^3 + x1^2*x2")
    p = (QQ.scalar(2), QQ.scalar(-1), QQ.scalar(3))
    q = tuple(c * QQ.scalar(5) for c in p)
    assert bool(f.evaluate(p)) == bool(f.evaluate(q))


def test_restrict_to_line_kills_multiples():
    line = parse_form("x0 + 2*x1 - x2")
    for text in ["x0^2", "x1*x2", "x0*x2 - x1^2"]:
        f = Form(parse_form(text).poly * line.poly, 3)
        assert not f.restrict_to_line(line)


def test_restrict_to_line_examples():
    # x2 = 0 turns x0^2 + x1*x2 into s^2
    f = parse_form("x0^2 + x1*x2")
    r = f.restrict_to_line(parse_form("x2"))
    assert r.coefficients[0].value == 1
    assert all(not c for c in r.coefficients[1:])
    # x0 = 0 leaves a binary quartic with roots 0, 1, -1, 2 in s/t
    f = parse_form(
        "x1*(x1 - x2)*(x1 + x2)*(x1 - 2*x2) + x0*x2^3", expected_degree=4
    )
    r = f.restrict_to_line(parse_form("x0"))
    for s, t in [(0, 1), (1, 1), (-1, 1), (2, 1)]:
        assert not r.evaluate(QQ.scalar(s), QQ.scalar(t))


def test_line_point_maps_back_to_the_line():
    line = parse_form("x0 + 2*x1 - x2")
    p = line.line_point(QQ.scalar(3), QQ.scalar(-1))
    assert not line.evaluate(p)


def test_binary_form_arithmetic():
    d = QQ
    a = BinaryForm(d, 1, [d.one, d.scalar(2)])  # s + 2t
    b = BinaryForm(d, 1, [d.one, d.scalar(-2)])  # s - 2t
    prod = a * b
    assert prod.degree == 2
    assert [c.value for c in prod.coefficients] == [1, 0, -4]
    assert not prod.evaluate(d.scalar(2), d.scalar(-1))


def test_monomials_of_degree():
    assert len(monomials_of_degree(2)) == 6
    assert len(monomials_of_degree(4)) == 15
    assert all(sum(e) == 3 for e in monomials_of_degree(3))


def test_linear_rank_examples():
    forms = [parse_form(t) for t in ("x0*x2", "x0*x1", "x0^2")]
    assert linear_rank(forms, 2) == 3
    forms = [parse_form("x1^2"), parse_form("2*x1^2")]
    assert linear_rank(forms, 2) == 1
    assert linear_rank([], 2) == 0


def test_normalized_leading_coefficient_one():
    f = parse_form("3*x0^2 - 6*x1*x2")
    g = f.normalized()
    assert g.poly.leading_coefficient() == QQ.one
    assert g.poly * QQ.scalar(3) == f.poly


def test_prime_field_polynomials():
    dom = GF(7)
    f = parse_poly("x0^2 + 6*x1^2", domain=dom)
    g = parse_poly("x0^2 - x1^2", domain=dom)
    assert f == g
