"""Classification of presentation matrices into the moduli strata.

A 3x3 matrix with degrees (3,2,2) -> (1,1,1) presents a sheaf of the open
stratum; a 2x2 matrix with degrees (3,3) -> (2,0) presents one of the
closed stratum.  The classifier extracts the supporting quartic, the
length-3 scheme, the line/cubic splitting, or the boundary data.
"""

from .gcd import (
    LineSearchResult,
    binary_roots,
    common_linear_factor,
    line_intersection,
    lines_dividing_all,
)
from .matrices import DegreeError, FormMatrix, is_stable_kronecker
from .poly import BinaryForm, Form, MultiPoly, linear_rank, scalar_matrix_rank

M00 = "M00"
M01 = "M01"
M10 = "M10"
M11 = "M11"
BOUNDARY = "BoundaryBprime"
NOT_STABLE = "NotStable"
INVALID = "Invalid"


class StratumReport:
    """Outcome of classifying a presentation matrix."""

    def __init__(
        self,
        label,
        quartic=None,
        point=None,
        line=None,
        cubic=None,
        scheme_ideal=None,
        diagnostics="",
        kronecker=None,
    ):
        self.label = label
        self.quartic = quartic
        self.point = point
        self.line = line
        self.cubic = cubic
        self.scheme_ideal = scheme_ideal
        self.diagnostics = diagnostics
        self.kronecker = kronecker  # linear part, kept for Z extraction

    def to_json_dict(self):
        out = {"schema": 1, "label": self.label, "diagnostics": self.diagnostics}
        if self.quartic is not None:
            out["quartic"] = self.quartic.serialize()
        if self.point is not None:
            out["point"] = [str(c) for c in self.point]
        if self.line is not None:
            out["line"] = self.line.serialize()
        if self.cubic is not None:
            out["cubic"] = self.cubic.serialize()
        if self.scheme_ideal is not None:
            out["scheme_ideal"] = [f.serialize() for f in self.scheme_ideal]
        return out

    def __repr__(self):
        return f"StratumReport({self.label})"


RES0_SRC = (3, 2, 2)
RES0_TGT = (1, 1, 1)
RES1_SRC = (3, 3)
RES1_TGT = (2, 0)


def classify_res0(a):
    """Classify a (3,2,2) -> (1,1,1) presentation matrix.

    NotStable when the linear 2x3 block is an unstable Kronecker module;
    BoundaryBprime when the determinant vanishes; M01 when the minors share
    a linear factor; M00 otherwise.
    """
    if not isinstance(a, FormMatrix) or a.src_degrees != RES0_SRC \
            or a.tgt_degrees != RES0_TGT:
        return StratumReport(INVALID, diagnostics="expected shape res0")
    k = a.submatrix([1, 2], [0, 1, 2])
    if not is_stable_kronecker(k):
        return StratumReport(
            NOT_STABLE,
            diagnostics="2x2 minors of the linear part are dependent",
            kronecker=k,
        )
    det = a.determinant()
    minors = k.maximal_minors()
    if not det:
        return _boundary_report(a, k, minors)
    line = common_linear_factor(minors)
    if line is not None:
        cubic = Form(det.poly.exact_div(line.poly), 3)
        return StratumReport(
            M01,
            quartic=det,
            line=line,
            cubic=cubic,
            scheme_ideal=minors,
            diagnostics="minors share a linear factor",
            kronecker=k,
        )
    return StratumReport(
        M00,
        quartic=det,
        scheme_ideal=minors,
        diagnostics="determinant nonzero, minors coprime",
        kronecker=k,
    )


def _boundary_report(a, k, minors):
    line = common_linear_factor(minors)
    if line is None:
        return StratumReport(
            BOUNDARY,
            diagnostics=(
                "zero determinant but coprime minors: top row lies in the "
                "row space of the linear part (degenerate presentation)"
            ),
            kronecker=k,
        )
    point = None
    diagnostics = "zero determinant over the boundary line"
    w = _recover_boundary_parameter(a)
    if w is not None:
        try:
            point = line_intersection(line, w)
            diagnostics += (
                f"; boundary parameter w = {w.serialize()} recovered from "
                "the top row"
            )
        except ValueError:
            point = None
    else:
        diagnostics += "; matrix not in the boundary normal form, w not recovered"
    return StratumReport(
        BOUNDARY, line=line, point=point, diagnostics=diagnostics, kronecker=k
    )


def _recover_boundary_parameter(a):
    """Read w off a matrix in the [0, -x2*w, x1*w] normal form, else None."""
    domain = a.domain
    x1 = MultiPoly.variable(domain, 1)
    x2 = MultiPoly.variable(domain, 2)
    top = a.row(0)
    if top[0]:
        return None
    xbar0 = a[1, 2]
    row1 = a.row(1)
    row2 = a.row(2)
    if (
        row1[0].poly != -x2
        or row1[1]
        or row2[0].poly != x1
        or row2[1].poly != -xbar0.poly
        or row2[2]
    ):
        return None
    if not top[1] or not top[2]:
        return None
    w1 = top[1].poly.try_exact_div(-x2)
    w2 = top[2].poly.try_exact_div(x1)
    if w1 is None or w2 is None or w1 != w2:
        return None
    return Form(w1, 1)


def classify_res1(a):
    """Classify a (3,3) -> (2,0) presentation matrix.

    The first column holds the two linear forms cutting out the point, the
    second column the two cubics; the determinant is the quartic.
    """
    if not isinstance(a, FormMatrix) or a.src_degrees != RES1_SRC \
            or a.tgt_degrees != RES1_TGT:
        return StratumReport(INVALID, diagnostics="expected shape res1")
    z1, z2 = a[0, 0], a[1, 0]
    if linear_rank([z1, z2], 1) < 2:
        return StratumReport(
            NOT_STABLE, diagnostics="dependent linear forms in the z column"
        )
    point = line_intersection(z1, z2)
    det = a.determinant()
    if not det:
        return StratumReport(
            INVALID,
            point=point,
            diagnostics="zero determinant: no supporting quartic",
        )
    search = lines_dividing_all([det], through=point)
    if search.lines:
        line = search.lines[0]
        return StratumReport(
            M11,
            quartic=det,
            point=point,
            line=line,
            diagnostics=f"line {line.serialize()} through the point divides "
            "the quartic",
        )
    if search.nonsplit_degree > 0:
        return StratumReport(
            M11,
            quartic=det,
            point=point,
            diagnostics=(
                "a dividing line exists over an extension field "
                f"(non-split remainder of degree {search.nonsplit_degree})"
            ),
        )
    return StratumReport(
        M10,
        quartic=det,
        point=point,
        diagnostics="no line through the point divides the quartic",
    )


class ZPoints:
    """Rational points of the length-3 scheme, with multiplicity."""

    def __init__(self, points, nonsplit_degree, generators):
        self.points = points  # list of (point, multiplicity)
        self.nonsplit_degree = nonsplit_degree
        self.generators = generators

    @property
    def split(self):
        return self.nonsplit_degree == 0

    def __repr__(self):
        return f"ZPoints({self.points}, nonsplit={self.nonsplit_degree})"


def extract_Z_points(report):
    """Points of the scheme cut out by the minors of an M00 report.

    Pencil elimination: the scheme consists of the points where the two
    rows of the linear block become dependent, i.e. the kernels of the
    3x3 coefficient matrix of u*row0 + v*row1 at the roots of its
    determinant, a binary cubic in [u:v].
    """
    if report.label != M00:
        raise ValueError("Z extraction needs an M00 report")
    k = report.kronecker
    domain = k.domain
    rows = [_linear_coeff_rows(k.row(0), domain), _linear_coeff_rows(k.row(1), domain)]
    # det(u*Z + v*W) as a binary cubic via BinaryForm-entry expansion
    entries = [
        [
            BinaryForm(domain, 1, [rows[0][i][var], rows[1][i][var]])
            for var in range(3)
        ]
        for i in range(3)
    ]
    cubic = _binary_det3(entries, domain)
    if not cubic:
        raise ValueError("pencil determinant vanishes identically")
    roots, nonsplit = binary_roots(cubic)
    points = {}
    order = []
    for u, v in roots:
        m = [
            [rows[0][i][var] * u + rows[1][i][var] * v for var in range(3)]
            for i in range(3)
        ]
        p = _null_vector(m, domain)
        key = _proj_key(p)
        if key not in points:
            points[key] = [p, 0]
            order.append(key)
        points[key][1] += 1
    found = [(points[k][0], points[k][1]) for k in order]
    if nonsplit == 0:
        _check_not_collinear(found, domain)
    return ZPoints(found, nonsplit, report.scheme_ideal)


def _linear_coeff_rows(row, domain):
    out = []
    for entry in row:
        out.append(
            [
                entry.poly.terms.get(
                    tuple(1 if j == i else 0 for j in range(3)), domain.zero
                )
                for i in range(3)
            ]
        )
    return out


def _binary_det3(entries, domain):
    def bf(i, j):
        return entries[i][j]

    total = BinaryForm.zero(domain, 3)
    for j0, j1, j2, sign in (
        (0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
        (2, 1, 0, -1), (1, 0, 2, -1), (0, 2, 1, -1),
    ):
        term = bf(0, j0) * bf(1, j1) * bf(2, j2)
        total = total + (term if sign > 0 else -term)
    return total


def _null_vector(m, domain):
    """A nonzero right kernel vector of a rank-2 3x3 scalar matrix."""
    rows = [list(r) for r in m]
    pivots = {}
    r = 0
    for col in range(3):
        piv = next((i for i in range(r, 3) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(3):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots[col] = r
        r += 1
    if r == 3:
        raise ValueError("matrix has trivial kernel")
    if r < 2:
        raise AssertionError("kernel of dimension > 1: scheme not reduced at a point")
    free = next(c for c in range(3) if c not in pivots)
    vec = [domain.zero] * 3
    vec[free] = domain.one
    for col, row_i in pivots.items():
        vec[col] = -rows[row_i][free]
    return tuple(vec)


def _proj_key(p):
    pivot = max(i for i in range(3) if p[i])
    inv = p[pivot].inverse()
    return tuple((c * inv).value for c in p)


def _check_not_collinear(found, domain):
    distinct = [p for p, _ in found]
    if len(distinct) == 3:
        rank = scalar_matrix_rank([list(p) for p in distinct])
        if rank < 3:
            raise AssertionError(
                "scheme points are collinear: stability contract violated"
            )


def extension_data(report):
    """The (line, cubic) splitting of an M01 determinant."""
    if report.label != M01:
        raise ValueError("extension data needs an M01 report")
    quotient = report.quartic.poly.try_exact_div(report.line.poly)
    if quotient is None:
        raise AssertionError("M01 invariant breach: line does not divide det")
    return report.line, Form(quotient, 3)
