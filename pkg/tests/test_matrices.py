import random

import pytest

from quarticmoduli.field import GF, QQ
from quarticmoduli.matrices import (
    AddMultipleOfRow,
    DegreeError,
    FormMatrix,
    ScaleRow,
    SwapRows,
    act,
    apply_ops,
    elementary_op,
    identity_automorphism,
    is_stable_kronecker,
    make_matrix,
    matrix_from_json_dict,
    ops_determinant_scale,
    random_graded_automorphism,
    random_matrix,
)
from quarticmoduli.poly import Form, parse_form, parse_poly


def bordered_example():
    return make_matrix(
        (3, 2, 2),
        (1, 1, 1),
        [
            ["x1^2", "0", "0"],
            ["-x2", "0", "x0"],
            ["x1", "-x0", "0"],
        ],
    )


def test_make_matrix_degree_validation():
    m = bordered_example()
    assert m[0, 0].degree == 2
    assert m[1, 0].degree == 1
    with pytest.raises(DegreeError):
        make_matrix((3, 2, 2), (1, 1, 1), [
            ["x0^2", "0", "0"],
            ["x0^2", "0", "x0"],  # degree 2 where 1 is required
            ["x1", "-x0", "0"],
        ])


def test_res1_shape():
    m = make_matrix((3, 3), (2, 0), [["x0", "x1^3"], ["x1", "x2^3"]])
    assert m[0, 0].degree == 1
    assert m[0, 1].degree == 3


def test_determinant_of_bordered_matrix():
    # det [[q0,q1,q2],[-x2,0,x0],[x1,-x0,0]] = x0*(x0*q0 + x1*q1 + x2*q2)
    m = make_matrix(
        (3, 2, 2),
        (1, 1, 1),
        [
            ["x0^2", "x1*x2", "x2^2"],
            ["-x2", "0", "x0"],
            ["x1", "-x0", "0"],
        ],
    )
    q = [parse_poly(t) for t in ("x0^2", "x1*x2", "x2^2")]
    x = [parse_poly(v) for v in ("x0", "x1", "x2")]
    expected = x[0] * (x[0] * q[0] + x[1] * q[1] + x[2] * q[2])
    assert m.determinant().poly == expected


def test_determinant_zero_for_boundary_matrix():
    m = make_matrix(
        (3, 2, 2),
        (1, 1, 1),
        [
            ["0", "-x2*(2*x1 + 3*x2)", "x1*(2*x1 + 3*x2)"],
            ["-x2", "0", "x0"],
            ["x1", "-x0", "0"],
        ],
    )
    assert not m.determinant()


def test_determinant_one_by_one():
    m = make_matrix((3,), (1,), [["x0*x1"]])
    assert m.determinant().poly == parse_poly("x0*x1")


def test_determinant_rejects_non_square():
    m = make_matrix((2, 2), (1, 1, 1), [
        ["x0", "x1", "x2"],
        ["x1", "x2", "x0"],
    ])
    with pytest.raises(DegreeError):
        m.determinant()


def test_maximal_minors_laplace_identity():
    dom = GF(101)
    rng = random.Random(3)
    for _ in range(20):
        m = random_matrix("res0", dom, rng=rng)
        k = m.submatrix([1, 2], [0, 1, 2])
        minors = k.maximal_minors()
        top = m.row(0)
        total = sum(
            (top[j].poly * minors[j].poly for j in range(3)),
            start=parse_poly("0", domain=dom),
        )
        assert total == m.determinant().poly


def test_maximal_minors_boundary_block():
    k = make_matrix((2, 2), (1, 1, 1), [
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ])
    minors = {m.normalized().poly.serialize() for m in k.maximal_minors()}
    assert minors == {"x0^2", "x0*x1", "x0*x2"}


def test_maximal_minors_by_row_deletion():
    m = make_matrix((2, 2, 2), (1, 1), [
        ["x0", "x1"],
        ["x1", "x2"],
        ["x2", "x0"],
    ])
    minors = m.maximal_minors()
    assert len(minors) == 3
    # each minor is the signed 2x2 determinant with one row deleted
    assert minors[0].poly == parse_poly("x1*x0 - x2*x2")


def test_act_identity():
    m = bordered_example()
    g = identity_automorphism((3, 2, 2))
    h = identity_automorphism((1, 1, 1))
    assert act(g, m, h) == m


def test_act_determinant_multiplicative():
    dom = GF(101)
    rng = random.Random(17)
    for _ in range(10):
        m = random_matrix("res0", dom, rng=rng)
        g = random_graded_automorphism((3, 2, 2), dom, rng)
        h = random_graded_automorphism((1, 1, 1), dom, rng)
        lhs = act(g, m, h).determinant().poly
        rhs = m.determinant().poly * g.determinant().poly \
            * h.determinant().poly
        assert lhs == rhs


def test_elementary_op_degree_checked():
    m = bordered_example()
    # adding x1 * (row of degree 2) to the degree-3 row is legal
    out = elementary_op(m, AddMultipleOfRow(0, 2, parse_form("x1")))
    assert out[0, 0].poly == parse_poly("x1^2 + x1*x1")
    # a constant multiple across different source degrees is not
    with pytest.raises(DegreeError):
        elementary_op(m, AddMultipleOfRow(0, 2, parse_form("1")))


def test_elementary_ops_determinant_scale():
    m = bordered_example()
    ops = [
        SwapRows(1, 2),
        ScaleRow(0, QQ.scalar(3)),
        AddMultipleOfRow(0, 2, parse_form("x1")),
    ]
    out = apply_ops(m, ops)
    scale = ops_determinant_scale(ops, QQ)
    assert scale.value == -3
    assert out.determinant().poly == m.determinant().poly * scale


def test_is_stable_kronecker():
    k = make_matrix((2, 2), (1, 1, 1), [
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ])
    assert is_stable_kronecker(k)
    k = make_matrix((2, 2), (1, 1, 1), [
        ["x0", "x1", "0"],
        ["0", "0", "0"],
    ])
    assert not is_stable_kronecker(k)
    k = make_matrix((2, 2), (1, 1, 1), [
        ["x0", "x1", "x2"],
        ["x1", "x2", "x0"],
    ])
    assert is_stable_kronecker(k)


def test_random_matrix_deterministic():
    dom = GF(101)
    a = random_matrix("res0", dom, seed=1)
    b = random_matrix("res0", dom, seed=1)
    c = random_matrix("res0", dom, seed=2)
    assert a == b
    assert a != c


def test_random_matrix_res1_shape():
    m = random_matrix("res1", GF(101), seed=0)
    assert m.src_degrees == (3, 3)
    assert m.tgt_degrees == (2, 0)


def test_json_roundtrip():
    m = bordered_example()
    data = m.to_json_dict()
    assert data["src_degrees"] == [3, 2, 2]
    again = matrix_from_json_dict(data, QQ)
    assert again == m
