"""One-parameter families through the boundary: blow-up charts, limits,
the twisted-ideal resolution builder, the 5x4 reduction chain, and
Fitting-support extraction.
"""

import json

from .gcd import gcd_fold, line_intersection
from .matrices import (
    AddMultipleOfCol,
    AddMultipleOfRow,
    DegreeError,
    FormMatrix,
    ScaleCol,
    ScaleRow,
    apply_ops,
    make_matrix,
    matrix_from_json_dict,
)
from .poly import Form, MultiPoly, monomials_of_degree, parse_form

RES0_SRC = (3, 2, 2)
RES0_TGT = (1, 1, 1)
DEFORM_SRC = (3, 3, 2, 2, 2)
DEFORM_TGT = (2, 1, 1, 1)


class ChartError(ValueError):
    """Raised when a blow-up chart contract is violated."""


def _var(domain, i):
    return MultiPoly.variable(domain, i)


class BlowupChartPoint:
    """A point (A, t, B) of a blow-up chart around the boundary.

    A is the zero-determinant normal form, B the normal direction whose
    chart coefficient is 1, and t the chart parameter; the blow-down map
    sends the triple to A + t*B.
    """

    def __init__(self, a, t, b, chart):
        self.a = a
        self.t = a.domain.scalar(t)
        self.b = b
        self.chart = chart
        self.params = _extract_chart_params(a, b)
        if not _chart_coefficient(self.params, chart, a.domain) == a.domain.one:
            raise ChartError(f"coefficient for chart {chart!r} must equal 1")
        if a.determinant():
            raise ChartError("base matrix must have zero determinant")
        from .matrices import is_stable_kronecker

        if not is_stable_kronecker(a.submatrix([1, 2], [0, 1, 2])):
            raise ChartError("base matrix must have a stable linear part")

    def total(self, t=None):
        """The matrix A + t*B of the family at parameter t."""
        t = self.t if t is None else self.a.domain.scalar(t)
        return self.a + self.b.scaled(t)

    def to_json_dict(self, t_values=()):
        return {
            "schema": 1,
            "A": self.a.to_json_dict(),
            "B": self.b.to_json_dict(),
            "chart": self.chart,
            "t_values": [str(t) for t in t_values],
        }


def _extract_chart_params(a, b):
    """Read (xbar0, w, q_i, a, b, c, d) off the chart normal forms."""
    domain = a.domain
    x1 = _var(domain, 1)
    x2 = _var(domain, 2)
    if a.src_degrees != RES0_SRC or a.tgt_degrees != RES0_TGT:
        raise ChartError("base matrix must have the res0 shape")
    if b.src_degrees != RES0_SRC or b.tgt_degrees != RES0_TGT:
        raise ChartError("direction matrix must have the res0 shape")
    xbar0 = a[1, 2]
    if a[0, 0] or a[1, 1] or a[2, 2]:
        raise ChartError("base matrix is not in the boundary normal form")
    if a[1, 0].poly != -x2 or a[2, 0].poly != x1 or a[2, 1].poly != -xbar0.poly:
        raise ChartError("base matrix is not in the boundary normal form")
    w1 = a[0, 1].poly.try_exact_div(-x2) if a[0, 1] else None
    w2 = a[0, 2].poly.try_exact_div(x1) if a[0, 2] else None
    if w1 is None or w2 is None or w1 != w2:
        raise ChartError("cannot read the boundary parameter w off the top row")
    w = Form(w1, 1)
    if (0, 0, 1) not in w1.terms and (0, 1, 0) not in w1.terms:
        raise ChartError("w must be a form in x1, x2")
    if any(e[0] for e in w1.terms):
        raise ChartError("w must be a form in x1, x2")
    # direction matrix template
    if b[1, 0] or b[1, 2] or b[2, 0]:
        raise ChartError("direction matrix is not in the chart normal form")
    coeff_c = _linear_coefficient(b[1, 1], 1, domain, "c entry must be c*x1")
    ab_entry = b[2, 1]
    coeff_a = ab_entry.poly.terms.get((0, 1, 0), domain.zero)
    coeff_b = ab_entry.poly.terms.get((0, 0, 1), domain.zero)
    if any(e[0] for e in ab_entry.poly.terms):
        raise ChartError("entry (2,1) of the direction must be a*x1 + b*x2")
    coeff_d = _linear_coefficient(b[2, 2], 2, domain, "d entry must be d*x2")
    q0, q1, q2 = b[0, 0], b[0, 1], b[0, 2]
    if any(e[0] for e in q1.poly.terms):
        raise ChartError("q1 must not involve x0")
    if any(e[0] or e[1] for e in q2.poly.terms):
        raise ChartError("q2 must involve only x2")
    return {
        "xbar0": xbar0,
        "w": w,
        "q0": q0,
        "q1": q1,
        "q2": q2,
        "a": coeff_a,
        "b": coeff_b,
        "c": coeff_c,
        "d": coeff_d,
    }


def _linear_coefficient(entry, var, domain, message):
    mono = tuple(1 if j == var else 0 for j in range(3))
    for e in entry.poly.terms:
        if e != mono:
            raise ChartError(message)
    return entry.poly.terms.get(mono, domain.zero)


def _chart_coefficient(params, chart, domain):
    if chart in ("a", "b", "c", "d"):
        return params[chart]
    for name in ("q0", "q1", "q2"):
        if chart.startswith(name + "["):
            exps = tuple(int(x) for x in chart[len(name) + 1 : -1].split(","))
            return params[name].poly.terms.get(exps, domain.zero)
    raise ChartError(f"unknown chart coordinate {chart!r}")


def make_blowup_chart_point(
    domain,
    alpha,
    beta,
    gamma,
    delta,
    q0_text,
    q1_text,
    q2_text,
    ab_cd,
    chart,
    t,
):
    """Assemble a BlowupChartPoint from chart coordinates.

    (gamma, delta) are the boundary parameters of w = gamma*x1 + delta*x2;
    ab_cd is the (a, b, c, d) quadruple of the direction matrix.
    """
    ca, cb, cc, cd = [domain.scalar(v) for v in ab_cd]
    x0, x1, x2 = (_var(domain, i) for i in range(3))
    xbar0 = x0 + x1 * domain.scalar(alpha) + x2 * domain.scalar(beta)
    w = x1 * domain.scalar(gamma) + x2 * domain.scalar(delta)
    zero1 = Form.zero(domain, 1)
    zero2 = Form.zero(domain, 2)
    a = FormMatrix(
        RES0_SRC,
        RES0_TGT,
        [
            [zero2, Form(-x2 * w, 2), Form(x1 * w, 2)],
            [Form(-x2, 1), zero1, Form(xbar0, 1)],
            [Form(x1, 1), Form(-xbar0, 1), zero1],
        ],
    )
    q0 = parse_form(q0_text, domain=domain)
    q1 = parse_form(q1_text, domain=domain)
    q2 = parse_form(q2_text, domain=domain)
    b = FormMatrix(
        RES0_SRC,
        RES0_TGT,
        [
            [_as_deg(q0, 2), _as_deg(q1, 2), _as_deg(q2, 2)],
            [zero1, Form(x1 * cc, 1), zero1],
            [zero1, Form(x1 * ca + x2 * cb, 1), Form(x2 * cd, 1)],
        ],
    )
    return BlowupChartPoint(a, t, b, chart)


def _as_deg(form, degree):
    if not form:
        return Form.zero(form.domain, degree)
    if form.degree != degree:
        raise ChartError(f"expected degree {degree}, got {form.degree}")
    return form


def family_limit(pt):
    """The limit (quartic, point) of the family A + t*B as t -> 0.

    Direct substitution into the closed form
    f = xbar0*(xbar0*q0 + x1*q1 + x2*q2) - w*(c*x1^3 + a*x1^2*x2
        + b*x1*x2^2 + d*x2^3),
    with the point Z(xbar0, w); a zero f means the direction is tangent to
    the boundary and the chart contract is breached.
    """
    p = pt.params
    domain = pt.a.domain
    x1 = _var(domain, 1)
    x2 = _var(domain, 2)
    xbar0 = p["xbar0"].poly
    w = p["w"].poly
    cubic = (
        x1 ** 3 * p["c"]
        + x1 ** 2 * x2 * p["a"]
        + x1 * x2 ** 2 * p["b"]
        + x2 ** 3 * p["d"]
    )
    f = xbar0 * (xbar0 * p["q0"].poly + x1 * p["q1"].poly + x2 * p["q2"].poly) \
        - w * cubic
    if not f:
        raise ChartError(
            "degenerate direction: the limit quartic vanishes (direction "
            "tangent to the boundary)"
        )
    quartic = Form(f, 4)
    point = line_intersection(p["xbar0"], p["w"])
    if quartic.evaluate(point):
        raise AssertionError("limit quartic must vanish at the limit point")
    return quartic, point


def tangent_quartic(a, b):
    """The t-linear coefficient of det(A + tB) for det A = 0.

    Equals the sum of the three determinants with one row of A replaced by
    the matching row of B.
    """
    total = MultiPoly.zero(a.domain)
    for i in range(3):
        replaced = a.with_row(i, b.row(i))
        total = total + replaced.determinant().poly
    return Form(total, 4)


# ---- deformation reduction chain --------------------------------------


class DeformationInstance:
    """Parameters of the 5x4 boundary deformation matrix.

    xbar0 and w are linear forms, q quadratics, y and z linear triples, and
    t a nonzero scalar.
    """

    def __init__(self, domain, xbar0, w, q, y, z, t):
        self.domain = domain
        self.xbar0 = xbar0
        self.w = w
        self.q = list(q)
        self.y = list(y)
        self.z = list(z)
        self.t = domain.scalar(t)
        if not self.t:
            raise ChartError("deformation parameter t must be nonzero")

    def initial_matrix(self):
        domain = self.domain
        x1, x2 = _var(domain, 1), _var(domain, 2)
        t = self.t
        z1 = Form.zero(domain, 1)
        z2 = Form.zero(domain, 2)
        w, xb = self.w.poly, self.xbar0.poly
        q = [f.poly for f in self.q]
        y = [f.poly for f in self.y]
        z = [f.poly for f in self.z]
        rows = [
            [z1, z2, z2, z2],
            [z1, Form(q[0] * t, 2), Form(-w * x2 + q[1] * t, 2),
             Form(w * x1 + q[2] * t, 2)],
            [Form.zero(domain, 0), Form(-x2 + y[0] * t, 1), Form(y[1] * t, 1),
             Form(xb + y[2] * t, 1)],
            [Form.zero(domain, 0), Form(x1 + z[0] * t, 1),
             Form(-xb + z[1] * t, 1), Form(z[2] * t, 1)],
            [Form(MultiPoly.constant(domain, 1), 0), z1, z1, z1],
        ]
        return FormMatrix(DEFORM_SRC, DEFORM_TGT, rows)

    def reduction_ops(self):
        """The six recorded elementary-operation steps of the reduction."""
        domain = self.domain
        x1 = Form(_var(domain, 1), 1)
        x2 = Form(_var(domain, 2), 1)
        inv_t = self.t.inverse()
        return [
            [AddMultipleOfRow(1, 4, self.w)],
            [AddMultipleOfCol(2, 0, x2), AddMultipleOfCol(3, 0, -x1)],
            [AddMultipleOfRow(0, 4, self.xbar0)],
            [AddMultipleOfRow(0, 2, x1), AddMultipleOfRow(0, 3, x2)],
            [ScaleRow(0, inv_t), ScaleRow(1, inv_t)],
            [ScaleCol(0, self.t)],
        ]

    def expected_trace(self):
        """The printed intermediate matrices, one per reduction step."""
        domain = self.domain
        x1, x2 = _var(domain, 1), _var(domain, 2)
        t = self.t
        w, xb = self.w.poly, self.xbar0.poly
        q = [f.poly for f in self.q]
        y = [f.poly for f in self.y]
        z = [f.poly for f in self.z]
        zero = MultiPoly.zero(domain)
        one = MultiPoly.constant(domain, 1)

        def mat(rows):
            out = []
            for i, row in enumerate(rows):
                out.append(
                    [
                        Form(p, DEFORM_SRC[i] - DEFORM_TGT[j]) if p else
                        Form.zero(domain, max(DEFORM_SRC[i] - DEFORM_TGT[j], 0))
                        for j, p in enumerate(row)
                    ]
                )
            return FormMatrix(DEFORM_SRC, DEFORM_TGT, out)

        row2 = [zero, -x2 + y[0] * t, y[1] * t, xb + y[2] * t]
        row3 = [zero, x1 + z[0] * t, -xb + z[1] * t, z[2] * t]
        m1 = mat([
            [zero, zero, zero, zero],
            [w, q[0] * t, -w * x2 + q[1] * t, w * x1 + q[2] * t],
            row2,
            row3,
            [one, zero, zero, zero],
        ])
        m2 = mat([
            [zero, zero, zero, zero],
            [w, q[0] * t, q[1] * t, q[2] * t],
            row2,
            row3,
            [one, zero, x2, -x1],
        ])
        m3 = mat([
            [xb, zero, xb * x2, -xb * x1],
            [w, q[0] * t, q[1] * t, q[2] * t],
            row2,
            row3,
            [one, zero, x2, -x1],
        ])
        m4 = mat([
            [xb, (x1 * y[0] + x2 * z[0]) * t, (x1 * y[1] + x2 * z[1]) * t,
             (x1 * y[2] + x2 * z[2]) * t],
            [w, q[0] * t, q[1] * t, q[2] * t],
            row2,
            row3,
            [one, zero, x2, -x1],
        ])
        inv_t = t.inverse()
        m5 = mat([
            [xb * inv_t, x1 * y[0] + x2 * z[0], x1 * y[1] + x2 * z[1],
             x1 * y[2] + x2 * z[2]],
            [w * inv_t, q[0], q[1], q[2]],
            row2,
            row3,
            [one, zero, x2, -x1],
        ])
        m6 = self.expected_final()
        return [m1, m2, m3, m4, m5, m6]

    def expected_final(self):
        domain = self.domain
        x1, x2 = _var(domain, 1), _var(domain, 2)
        t = self.t
        w, xb = self.w.poly, self.xbar0.poly
        q = [f.poly for f in self.q]
        y = [f.poly for f in self.y]
        z = [f.poly for f in self.z]
        rows = [
            [Form(xb, 1), Form(x1 * y[0] + x2 * z[0], 2),
             Form(x1 * y[1] + x2 * z[1], 2), Form(x1 * y[2] + x2 * z[2], 2)],
            [Form(w, 1), Form(q[0], 2), Form(q[1], 2), Form(q[2], 2)],
            [Form.zero(domain, 0), Form(-x2 + y[0] * t, 1), Form(y[1] * t, 1),
             Form(xb + y[2] * t, 1)],
            [Form.zero(domain, 0), Form(x1 + z[0] * t, 1),
             Form(-xb + z[1] * t, 1), Form(z[2] * t, 1)],
            [Form(MultiPoly.constant(domain, t), 0), Form.zero(domain, 1),
             Form(x2, 1), Form(-x1, 1)],
        ]
        return FormMatrix(DEFORM_SRC, DEFORM_TGT, rows)


def deformation_reduction_trace(instance):
    """Replay the reduction steps; returns the list of matrices after each."""
    matrix = instance.initial_matrix()
    trace = [matrix]
    for ops in instance.reduction_ops():
        matrix = apply_ops(matrix, ops)
        trace.append(matrix)
    return trace


def deformation_normal_form(instance):
    """The reduced 5x4 matrix, produced by replaying the recorded steps."""
    final = deformation_reduction_trace(instance)[-1]
    expected = instance.expected_final()
    if final != expected:
        raise AssertionError("reduction chain did not reach the normal form")
    return final


# ---- twisted ideal resolution -----------------------------------------


class TwistedIdealResolution:
    """A resolution datum (w, h) with f = l*h - w*g.

    semistable is False exactly when l divides f, in which case the w = 0
    witness is returned.
    """

    def __init__(self, line, g, w, h, semistable):
        self.line = line
        self.g = g
        self.w = w
        self.h = h
        self.semistable = semistable

    def matrix(self):
        return FormMatrix(
            (3, 3),
            (2, 0),
            [[self.line, self.g], [self.w, self.h]],
        )


def build_twisted_ideal_resolution(f, l, g):
    """Solve f = l*h - w*g for a linear w and cubic h.

    Linear algebra on the degree-4 slice of the ideal (l, g); raises when f
    is not in the ideal.  Any exact solution is accepted; when l divides f
    the w = 0 solution is returned and flagged non-semistable.
    """
    domain = f.domain
    if f.degree != 4 or l.degree != 1 or g.degree != 3:
        raise ValueError("need degrees (4, 1, 3)")
    if not l or not g:
        raise ValueError("line and cubic must be nonzero")
    quotient = f.poly.try_exact_div(l.poly)
    if quotient is not None:
        return TwistedIdealResolution(
            l, g, Form.zero(domain, 1), Form(quotient, 3), semistable=False
        )
    cubic_monos = monomials_of_degree(3)
    linear_monos = monomials_of_degree(1)
    quartic_monos = monomials_of_degree(4)
    index = {m: i for i, m in enumerate(quartic_monos)}
    columns = []
    for m in cubic_monos:
        columns.append(l.poly * MultiPoly.monomial(domain, m))
    for m in linear_monos:
        columns.append(-(g.poly * MultiPoly.monomial(domain, m)))
    nrows = len(quartic_monos)
    matrix = [[domain.zero] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for e, c in col.terms.items():
            matrix[index[e]][j] = c
    rhs = [domain.zero] * nrows
    for e, c in f.poly.terms.items():
        rhs[index[e]] = c
    solution = _solve_linear_system(matrix, rhs, domain)
    if solution is None:
        raise ValueError("quartic is not in the ideal (l, g): Z is not on C")
    h = MultiPoly.zero(domain)
    for m, c in zip(cubic_monos, solution[: len(cubic_monos)]):
        h = h + MultiPoly.monomial(domain, m, c)
    w = MultiPoly.zero(domain)
    for m, c in zip(linear_monos, solution[len(cubic_monos):]):
        w = w + MultiPoly.monomial(domain, m, c)
    result = TwistedIdealResolution(
        l, g, Form(w, 1), Form(h, 3), semistable=True
    )
    assert l.poly * result.h.poly - result.w.poly * g.poly == f.poly
    return result


def _solve_linear_system(matrix, rhs, domain):
    """A particular solution of matrix * x = rhs, or None if inconsistent."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [domain.zero] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return x


# ---- flag limits -------------------------------------------------------


class FlagDatum:
    """A quartic, a line, and three binary roots on the line."""

    def __init__(self, quartic, line, z_roots):
        if len(z_roots) != 3:
            raise ValueError("need exactly three binary roots (with repeats)")
        self.quartic = quartic
        self.line = line
        self.z_roots = list(z_roots)


def binary_exact_div(f, g):
    """Exact quotient of binary forms; raises when division fails."""
    if not g:
        raise ZeroDivisionError("division by zero binary form")
    domain = f.domain
    if not f:
        raise ValueError("dividing the zero form is ambiguous in degree")
    # strip common powers of t when g has no pure-s leading coefficient
    fi = list(f.coefficients)
    gi = list(g.coefficients)
    while not gi[0]:
        if fi[0]:
            raise ValueError("not divisible")
        fi = fi[1:]
        gi = gi[1:]
    d = (len(fi) - 1) - (len(gi) - 1)
    if d < 0:
        raise ValueError("not divisible")
    inv = gi[0].inverse()
    q = []
    rem = list(fi)
    for k in range(d + 1):
        qk = rem[k] * inv
        q.append(qk)
        for j, gj in enumerate(gi):
            rem[k + j] = rem[k + j] - qk * gj
    if any(rem):
        raise ValueError("not divisible")
    from .poly import BinaryForm

    return BinaryForm(domain, d, q)


def root_factor(domain, root):
    """The binary linear form vanishing at the root (s0, t0)."""
    from .poly import BinaryForm

    s0, t0 = (domain.scalar(v) for v in root)
    return BinaryForm(domain, 1, [t0, -s0])


def flag_limit(datum):
    """The residual point (L n C) minus Z on the quartic.

    Restrict the quartic to the line, divide out the three prescribed
    binary roots, and map the remaining root back into the plane.
    """
    f, l = datum.quartic, datum.line
    domain = f.domain
    restriction = f.restrict_to_line(l)
    if not restriction:
        raise ValueError("line is contained in the quartic")
    for root in datum.z_roots:
        try:
            restriction = binary_exact_div(restriction, root_factor(domain, root))
        except ValueError as exc:
            raise ValueError(
                "prescribed roots are not contained in the line section"
            ) from exc
    # a binary linear form remains; its root is always rational
    a, b = restriction.coefficients
    s1, t1 = -b, a
    point = l.line_point(s1, t1)
    if f.evaluate(point):
        raise AssertionError("residual point must lie on the quartic")
    return point


# ---- Fitting support ---------------------------------------------------


def fitting_support(m):
    """Normalized GCD of the maximal minors of a 5x4 presentation."""
    if m.src_degrees != DEFORM_SRC or m.tgt_degrees != DEFORM_TGT:
        raise DegreeError("expected the (3,3,2,2,2) -> (2,1,1,1) shape")
    minors = [mm for mm in m.maximal_minors() if mm]
    if not minors:
        raise ValueError("all maximal minors vanish: rank-deficient matrix")
    g = gcd_fold(minors)
    return Form(g, g.total_degree())


# ---- family files ------------------------------------------------------


def family_from_json_dict(data, domain):
    a = matrix_from_json_dict(data["A"], domain)
    b = matrix_from_json_dict(data["B"], domain)
    t_values = [domain.parse(t) for t in data.get("t_values", [])]
    pt = BlowupChartPoint(a, domain.one, b, data["chart"])
    return pt, t_values


def load_family(path, domain):
    with open(path) as fh:
        return family_from_json_dict(json.load(fh), domain)
