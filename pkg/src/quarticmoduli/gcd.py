"""Exact multivariate GCDs and linear-factor extraction.

The multivariate GCD uses the classical recursive content / primitive-part
scheme with a subresultant pseudo-remainder sequence in the pivot variable.
Linear factors are extracted through pencils of lines: restricting to a
pencil turns divisibility by a line into a root of a binary form.
"""

from fractions import Fraction

from .field import QQ, PrimeField, Rationals
from .poly import BinaryForm, Form, MultiPoly, NVARS

# ---- univariate view helpers ------------------------------------------
# A polynomial viewed as univariate in variable v has coefficients that are
# MultiPolys with zero exponent in v.


def _as_univariate(poly, v):
    d = poly.degree_in(v)
    coeffs = [MultiPoly.zero(poly.domain) for _ in range(d + 1)]
    for e, c in poly.terms.items():
        rest = list(e)
        k = rest[v]
        rest[v] = 0
        coeffs[k] = coeffs[k] + MultiPoly(poly.domain, {tuple(rest): c})
    return coeffs


def _from_univariate(coeffs, v, domain):
    total = MultiPoly.zero(domain)
    xv = MultiPoly.variable(domain, v)
    power = MultiPoly.constant(domain, 1)
    for c in coeffs:
        total = total + c * power
        power = power * xv
    return total


def _trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _pseudo_remainder(a, b):
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, fraction free."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and any(a):
        lead = a[-1]
        shift = len(a) - 1 - db
        a = [c * lc for c in a]
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - lead * bc
        _trim(a)
        if not a:
            break
        e -= 1
    for _ in range(max(e, 0)):
        a = [c * lc for c in a]
    return _trim(a)


def _subresultant_prs(a, b):
    """Last nonzero element of the subresultant PRS of primitive a, b.

    Inputs are univariate with MultiPoly coefficients, deg a >= deg b >= 1.
    """
    domain = a[0].domain
    one = MultiPoly.constant(domain, 1)
    g = one
    h = one
    while True:
        d = (len(a) - 1) - (len(b) - 1)
        r = _pseudo_remainder(a, b)
        if not r:
            return b
        if len(r) == 1:
            # nonzero remainder of degree 0: coprime primitive parts
            return r
        scale = g * h**d
        a, b = b, [c.exact_div(scale) for c in r]
        g = a[-1]
        if d == 0:
            pass  # h unchanged
        elif d == 1:
            h = g
        else:
            h = (g**d).exact_div(h ** (d - 1))


def _content_and_primitive(coeffs):
    content = MultiPoly.zero(coeffs[0].domain)
    for c in coeffs:
        content = multivariate_gcd(content, c)
    primitive = [c.exact_div(content) for c in coeffs]
    return content, primitive


def multivariate_gcd(a, b):
    """A GCD of two polynomials over QQ or F_p.

    Normalized so the graded-lex leading coefficient is 1; gcd(0, b) is the
    normalized b.
    """
    if isinstance(a, Form):
        a = a.poly
    if isinstance(b, Form):
        b = b.poly
    if a.domain != b.domain:
        a._coerce(b)  # raises FieldMismatchError
    if not a:
        return b.normalized()
    if not b:
        return a.normalized()
    v = next(
        (i for i in range(NVARS) if a.degree_in(i) > 0 or b.degree_in(i) > 0),
        None,
    )
    if v is None:
        return MultiPoly.constant(a.domain, 1)
    ua = _as_univariate(a, v)
    ub = _as_univariate(b, v)
    if len(ua) == 1:
        # a is free of v: common divisors are v-free, so recurse on content
        content_b, _ = _content_and_primitive(ub)
        return multivariate_gcd(a, content_b)
    if len(ub) == 1:
        content_a, _ = _content_and_primitive(ua)
        return multivariate_gcd(content_a, b)
    content_a, prim_a = _content_and_primitive(ua)
    content_b, prim_b = _content_and_primitive(ub)
    content = multivariate_gcd(content_a, content_b)
    if len(prim_a) < len(prim_b):
        prim_a, prim_b = prim_b, prim_a
    last = _subresultant_prs(prim_a, prim_b)
    if len(last) == 1:
        prim_gcd = MultiPoly.constant(a.domain, 1)
    else:
        _, prim_last = _content_and_primitive(last)
        prim_gcd = _from_univariate(prim_last, v, a.domain)
    return (content * prim_gcd).normalized()


def gcd_fold(polys):
    """GCD of a sequence of polynomials or forms."""
    total = None
    for p in polys:
        if isinstance(p, Form):
            p = p.poly
        total = p.normalized() if total is None else multivariate_gcd(total, p)
    if total is None:
        raise ValueError("empty input")
    return total


# ---- binary forms: gcd and rational roots -----------------------------


def binary_gcd(forms):
    """GCD of binary forms, as a binary form.

    Dehomogenize at t = 1 for the affine chart, and track the power of t
    (the root at [1:0]) separately.
    """
    forms = [f for f in forms if f]
    if not forms:
        raise ValueError("gcd of all-zero binary forms")
    domain = forms[0].domain
    t_power = None
    univariates = []
    for f in forms:
        # coefficient of s^(d-i) t^i; as polynomial in s: degree d-i term
        coeffs_s = list(reversed(f.coefficients))  # index = degree in s
        deg_s = max(i for i, c in enumerate(coeffs_s) if c)
        univariates.append(coeffs_s[: deg_s + 1])
        tp = f.degree - deg_s
        t_power = tp if t_power is None else min(t_power, tp)
    g = univariates[0]
    for u in univariates[1:]:
        g = _univariate_field_gcd(g, u, domain)
    deg = len(g) - 1 + t_power
    coeffs = [domain.zero] * (deg + 1)
    for i, c in enumerate(g):  # c is coeff of s^i; t exponent = deg - i
        coeffs[deg - i] = c
    return BinaryForm(domain, deg, coeffs)


def _univariate_field_gcd(a, b, domain):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, _univariate_remainder(a, b, domain)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _univariate_remainder(a, b, domain):
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    while len(a) - 1 >= db:
        factor = a[-1] * inv
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - factor * bc
        a.pop()
        while a and not a[-1]:
            a.pop()
        if not a:
            break
    return a


def _univariate_divide(a, root, domain):
    """Divide by (x - root) exactly (synthetic division)."""
    out = []
    carry = domain.zero
    for c in reversed(a):
        carry = c + carry * root
        out.append(carry)
    remainder = out.pop()
    if remainder:
        raise ValueError("not a root")
    return list(reversed(out))


def _rational_roots_qq(coeffs):
    """Rational roots (with multiplicity) of a QQ-coefficient polynomial."""
    # clear denominators to integers
    from math import gcd as igcd, lcm

    fracs = [Fraction(c.value) for c in coeffs]
    denom = lcm(*[f.denominator for f in fracs]) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    roots = []
    while len(ints) > 1:
        if ints[0] == 0:
            roots.append(Fraction(0))
            ints = ints[1:]
            continue
        g = 0
        for v in ints:
            g = igcd(g, abs(v))
        ints = [v // g for v in ints]
        found = None
        for p in _divisors(abs(ints[0])):
            for q in _divisors(abs(ints[-1])):
                for sign in (1, -1):
                    cand = Fraction(sign * p, q)
                    if _int_poly_eval(ints, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        # synthetic division over Q, then re-clear denominators
        qq = [Fraction(v) for v in ints]
        out = []
        carry = Fraction(0)
        for c in reversed(qq):
            carry = c + carry * found
            out.append(carry)
        out.pop()
        qq = list(reversed(out))
        denom = lcm(*[f.denominator for f in qq]) if qq else 1
        ints = [int(f * denom) for f in qq]
    return roots, len(ints) - 1


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _int_poly_eval(ints, x):
    total = Fraction(0)
    for c in reversed(ints):
        total = total * x + c
    return total


_MAX_SCAN_PRIME = 1_000_000


def _rational_roots_gf(coeffs, domain):
    roots = []
    if domain.p > _MAX_SCAN_PRIME:
        raise NotImplementedError("root scan limited to p <= 10^6")
    a = list(coeffs)
    while len(a) > 1:
        found = None
        for v in range(domain.p):
            x = domain.scalar(v)
            total = domain.zero
            for c in reversed(a):
                total = total * x + c
            if not total:
                found = x
                break
        if found is None:
            break
        roots.append(found)
        a = _univariate_divide(a, found, domain)
    return roots, len(a) - 1


def binary_roots(form):
    """Rational roots [s:t] of a binary form, with multiplicity.

    Returns (roots, nonsplit_degree) where roots are (s, t) scalar pairs and
    nonsplit_degree is the degree of the factor with no rational root.
    """
    domain = form.domain
    if not form:
        raise ValueError("zero binary form")
    coeffs_s = list(reversed(form.coefficients))  # index = s-degree
    deg_s = max(i for i, c in enumerate(coeffs_s) if c)
    t_mult = form.degree - deg_s
    roots = [(domain.one, domain.zero)] * t_mult  # root at t = 0, i.e. [1:0]
    # dehomogenize t = 1: roots s of the univariate give [s:1]
    univ = coeffs_s[: deg_s + 1]
    if isinstance(domain, Rationals):
        raw, nonsplit = _rational_roots_qq(univ)
        roots.extend((domain.scalar(r), domain.one) for r in raw)
    elif isinstance(domain, PrimeField):
        raw, nonsplit = _rational_roots_gf(univ, domain)
        roots.extend((r, domain.one) for r in raw)
    else:
        raise TypeError("roots need a field domain")
    return roots, nonsplit


# ---- lines ------------------------------------------------------------


def _line_form(domain, coeffs):
    terms = {}
    for i, c in enumerate(coeffs):
        c = domain.scalar(c)
        if c:
            terms[tuple(1 if j == i else 0 for j in range(3))] = c
    return Form(MultiPoly(domain, terms), 1)


def _pencil_basis(domain, point):
    """Two independent lines through a projective point."""
    pt = [domain.scalar(v) for v in point]
    if not any(pt):
        raise ValueError("projective point must not be all zero")
    pivot = max(i for i in range(3) if pt[i])
    others = [i for i in range(3) if i != pivot]
    lines = []
    for o in others:
        coeffs = [domain.zero] * 3
        # pt[pivot]*x_o - pt[o]*x_pivot vanishes at pt
        coeffs[o] = pt[pivot]
        coeffs[pivot] = -pt[o]
        lines.append(_line_form(domain, coeffs))
    return lines


class LineSearchResult:
    """Outcome of a dividing-line search.

    lines: degree-1 Forms with multiplicity (repeated entries);
    nonsplit_degree: degree of the remainder factor with no rational root,
    witnessing lines that exist only over an extension field.
    """

    def __init__(self, lines, nonsplit_degree):
        self.lines = lines
        self.nonsplit_degree = nonsplit_degree

    def __repr__(self):
        return (
            f"LineSearchResult(lines={self.lines!r}, "
            f"nonsplit_degree={self.nonsplit_degree})"
        )


def _pencil_restriction_coefficients(form, l1, l2, point):
    """Coefficients of form restricted to the pencil line s*l1 + t*l2.

    The line through `point` with pencil parameter [s:t] is spanned by
    `point` and a second point q(s, t) that is linear in (s, t); the
    restriction of the form to that line is a binary form in the line
    parameter whose coefficients are binary forms in (s, t).  A parameter
    [s:t] is a common root of all the returned coefficients exactly when
    the corresponding line divides the form.
    """
    domain = form.domain
    # q(s, t) = t*u - s*v with l1(u)=1, l2(u)=0, l1(v)=0, l2(v)=1
    u = _dual_point(l1, l2, domain)
    v = _dual_point(l2, l1, domain)
    pt = [domain.scalar(c) for c in point]
    # substitute x_i -> pt[i]*a + (t*u[i] - s*v[i])*b and expand in (a, b);
    # each (a, b)-coefficient is a binary form in (s, t).
    d = form.degree
    out = [BinaryForm.zero(domain, k) for k in range(d + 1)]
    from math import comb

    for e, c in form.poly.terms.items():
        # expand prod_i (pt[i]*a + q_i(s,t)*b)^e_i
        parts = [(BinaryForm(domain, 0, [domain.one]), 0)]
        for i, k in enumerate(e):
            qi = BinaryForm(domain, 1, [-v[i], u[i]])  # s-coeff, t-coeff
            new_parts = []
            for bf, bdeg in parts:
                for j in range(k + 1):
                    # choose j factors of q_i*b and k-j of pt[i]*a
                    coeff = pt[i] ** (k - j) * domain.scalar(comb(k, j))
                    term = bf * coeff
                    for _ in range(j):
                        term = term * qi
                    new_parts.append((term, bdeg + j))
            parts = _merge_parts(new_parts, domain)
        for bf, bdeg in parts:
            out[bdeg] = out[bdeg] + (bf * c).promoted(bdeg)
    return out


def _merge_parts(parts, domain):
    merged = {}
    for bf, bdeg in parts:
        if bdeg in merged:
            merged[bdeg] = merged[bdeg] + bf.promoted(bdeg)
        else:
            merged[bdeg] = bf.promoted(bdeg)
    return [(bf, bdeg) for bdeg, bf in merged.items()]


def _dual_point(l1, l2, domain):
    """A point with l1 = 1 and l2 = 0."""
    c1 = _line_coeffs(l1, domain)
    c2 = _line_coeffs(l2, domain)
    return _solve_two_linear([c1, c2], [domain.one, domain.zero], domain)


def _line_coeffs(line, domain):
    return [
        line.poly.terms.get(tuple(1 if j == i else 0 for j in range(3)),
                            domain.zero)
        for i in range(3)
    ]


def _solve_two_linear(rows, rhs, domain):
    """Solve a 2x3 system rows * x = rhs with any particular solution."""
    a = [list(rows[0]) + [rhs[0]], list(rows[1]) + [rhs[1]]]
    cols = [0, 1, 2]
    pivots = []
    r = 0
    for col in cols:
        if r >= 2:
            break
        piv = next((i for i in range(r, 2) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].inverse()
        a[r] = [v * inv for v in a[r]]
        for i in range(2):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    if r < 2:
        raise ValueError("degenerate pencil basis")
    x = [domain.zero] * 3
    for i, col in enumerate(pivots):
        x[col] = a[i][3]
    return x


def line_intersection(l1, l2):
    """The projective point Z(l1, l2) of two independent lines."""
    domain = l1.domain
    c1 = _line_coeffs(l1, domain)
    c2 = _line_coeffs(l2, domain)
    point = (
        c1[1] * c2[2] - c1[2] * c2[1],
        c1[2] * c2[0] - c1[0] * c2[2],
        c1[0] * c2[1] - c1[1] * c2[0],
    )
    if not any(point):
        raise ValueError("lines are dependent")
    return point


def lines_dividing_all(forms, through=None):
    """All rational lines dividing every input form.

    With `through` given, only lines in the pencil through that point are
    considered; the pencil restriction reduces the search to rational roots
    of a binary-form GCD.  Without it, candidate base points are taken from
    the intersections of the folded GCD with a reference line, and every
    candidate line is verified by exact division against all inputs.
    """
    forms = [f for f in forms if f]
    if not forms:
        raise ValueError("need at least one nonzero form")
    domain = forms[0].domain
    if through is not None:
        return _pencil_lines(forms, through, domain)
    g = gcd_fold(forms)
    if g.total_degree() == 0:
        return LineSearchResult([], 0)
    lines, nonsplit = _linear_factors(Form(g, g.total_degree()))
    verified = []
    for line in lines:
        if all(f.poly.try_exact_div(line.poly) is not None for f in forms):
            verified.append(line)
    return LineSearchResult(verified, nonsplit)


def _pencil_lines(forms, through, domain):
    l1, l2 = _pencil_basis(domain, through)
    coeff_forms = []
    for f in forms:
        coeff_forms.extend(
            bf for bf in _pencil_restriction_coefficients(f, l1, l2, through)
            if bf
        )
    if not coeff_forms:
        # every pencil line divides every form; cannot happen for nonzero
        # quartics, so report it as a degenerate input
        raise ValueError("all pencil restrictions vanish identically")
    g = binary_gcd(coeff_forms)
    if g.degree == 0:
        return LineSearchResult([], 0)
    roots, nonsplit = binary_roots(g)
    out = [
        Form(l1.poly * s + l2.poly * t, 1).normalized() for s, t in roots
    ]
    return LineSearchResult(out, nonsplit)


def _linear_factors(form):
    """Rational linear factors of a single form, with multiplicity.

    Every line in P2 meets the reference line Z(x0), so candidate base
    points come from the roots of the restriction to it; the factor x0
    itself is peeled off by exact division first.
    """
    domain = form.domain
    x0 = _line_form(domain, [domain.one, domain.zero, domain.zero])
    factors = []
    poly = form.poly
    while True:
        q = poly.try_exact_div(x0.poly)
        if q is None:
            break
        factors.append(x0)
        poly = q
    nonsplit = 0
    if poly.total_degree() > 0:
        rest = Form(poly, poly.total_degree())
        restriction = rest.restrict_to_line(x0)
        if not restriction:
            raise AssertionError("x0 should have been divided out")
        roots, nonsplit = binary_roots(restriction)
        seen = set()
        for s, t in roots:
            point = x0.line_point(s, t)
            key = _normalize_point(point, domain)
            if key in seen:
                continue
            seen.add(key)
            result = _pencil_lines([rest], point, domain)
            for line in result.lines:
                q = poly.try_exact_div(line.poly)
                while q is not None:
                    factors.append(line)
                    poly = q
                    q = poly.try_exact_div(line.poly)
            nonsplit = max(nonsplit, result.nonsplit_degree)
    return factors, nonsplit


def _normalize_point(point, domain):
    pivot = max(i for i in range(3) if point[i])
    inv = point[pivot].inverse()
    return tuple((c * inv).value for c in point)


def common_linear_factor(forms):
    """The shared degree-1 factor of the forms, if one exists.

    Folds the multivariate GCD; a degree-1 fold is returned directly, a
    higher-degree fold goes through the pencil-based linear factor search.
    """
    forms = list(forms)
    if not forms:
        raise ValueError("empty input")
    nonzero = [f for f in forms if f]
    if not nonzero:
        raise ValueError("need at least one nonzero form")
    g = gcd_fold(nonzero)
    d = g.total_degree()
    if d == 0:
        return None
    if d == 1:
        return Form(g, 1)
    lines, _ = _linear_factors(Form(g, d))
    for line in lines:
        if all(f.poly.try_exact_div(line.poly) is not None for f in nonzero):
            return line.normalized()
    return None
