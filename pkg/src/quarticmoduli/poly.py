"""Sparse exact polynomials in x0, x1, x2 and their homogeneous forms.

Terms are stored as a dict from exponent triples to nonzero coefficients.
The canonical term order is graded lexicographic with x0 > x1 > x2; the
canonical text serialization follows that order.
"""

from .field import QQ, FieldMismatchError

VARIABLES = ("x0", "x1", "x2")
NVARS = 3


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial in x0, x1, x2 over a coefficient domain."""

    __slots__ = ("domain", "terms")

    def __init__(self, domain, terms):
        self.domain = domain
        self.terms = {e: c for e, c in terms.items() if c}

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, domain):
        return cls(domain, {})

    @classmethod
    def constant(cls, domain, value):
        return cls(domain, {(0, 0, 0): domain.scalar(value)})

    @classmethod
    def variable(cls, domain, i):
        exp = tuple(1 if j == i else 0 for j in range(NVARS))
        return cls(domain, {exp: domain.one})

    @classmethod
    def monomial(cls, domain, exp, coeff=1):
        return cls(domain, {tuple(exp): domain.scalar(coeff)})

    # ---- ring structure -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.domain != self.domain:
                raise FieldMismatchError(
                    f"domain mismatch: {self.domain} vs {other.domain}"
                )
            return other
        return MultiPoly.constant(self.domain, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, self.domain.zero) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.domain, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.domain, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            # scalar multiple
            c = self.domain.scalar(other)
            return MultiPoly(self.domain, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = terms.get(e, self.domain.zero) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(self.domain, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = MultiPoly.constant(self.domain, 1)
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.domain, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        return hash((self.domain, frozenset(self.terms.items())))

    # ---- structure queries --------------------------------------------

    def total_degree(self):
        """Largest total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def leading_exponent(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_exponent()]

    def normalized(self):
        """Scale so the graded-lex leading coefficient is 1 (field domains)."""
        if not self.terms:
            return self
        inv = self.leading_coefficient().inverse()
        return self * inv

    def evaluate(self, point):
        """Value at a triple of scalars."""
        vals = [self.domain.scalar(v) for v in point]
        total = self.domain.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                term = term * v**k
            total = total + term
        return total

    def map_coefficients(self, fn, new_domain):
        return MultiPoly(new_domain, {e: fn(c) for e, c in self.terms.items()})

    # ---- exact division ------------------------------------------------

    def exact_div(self, divisor):
        q = self.try_exact_div(divisor)
        if q is None:
            raise ValueError("not exactly divisible")
        return q

    def try_exact_div(self, divisor):
        """Quotient self/divisor if the division is exact, else None."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return self
        lead_d = divisor.leading_exponent()
        lc_d = divisor.terms[lead_d]
        remainder = self
        quotient = {}
        while remainder:
            lead_r = remainder.leading_exponent()
            exp = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(k < 0 for k in exp):
                return None
            c = remainder.terms[lead_r] / lc_d
            quotient[exp] = c
            remainder = remainder - divisor * MultiPoly(self.domain, {exp: c})
        return MultiPoly(self.domain, quotient)

    # ---- serialization -------------------------------------------------

    def serialize(self):
        """Canonical text: graded-lex descending, explicit '*' and '^'."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = [
                f"{VARIABLES[i]}^{k}" if k > 1 else VARIABLES[i]
                for i, k in enumerate(e)
                if k
            ]
            text = c.as_text() if hasattr(c, "as_text") else str(c)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            if factors and text == "1":
                body = "*".join(factors)
            elif factors:
                body = text + "*" + "*".join(factors)
            else:
                body = text
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return self.serialize()


class Form:
    """A homogeneous polynomial with an explicit degree.

    The zero polynomial is homogeneous of every degree, so a zero Form may
    carry any nonnegative degree.
    """

    __slots__ = ("poly", "degree")

    def __init__(self, poly, degree):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if poly and (not poly.is_homogeneous() or poly.total_degree() != degree):
            raise ValueError(
                f"polynomial {poly!r} is not homogeneous of degree {degree}"
            )
        self.poly = poly
        self.degree = degree

    @classmethod
    def zero(cls, domain, degree):
        return cls(MultiPoly.zero(domain), degree)

    @property
    def domain(self):
        return self.poly.domain

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.poly == other.poly and (
            not self.poly or self.degree == other.degree
        )

    def __hash__(self):
        return hash(self.poly)

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.poly and other.poly and self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        degree = self.degree if self.poly else other.degree
        return Form(self.poly + other.poly, degree)

    def __neg__(self):
        return Form(-self.poly, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Form):
            return Form(self.poly * other.poly, self.degree + other.degree)
        return Form(self.poly * other, self.degree)

    __rmul__ = __mul__

    def normalized(self):
        return Form(self.poly.normalized(), self.degree)

    def evaluate(self, point):
        """Value at an affine representative of a projective point.

        Well defined up to scaling by a nonzero scalar to the degree-th
        power, so callers should only use the zero/nonzero status.
        """
        pt = list(point)
        if all(not self.poly.domain.scalar(v) for v in pt):
            raise ValueError("projective point must not be all zero")
        return self.poly.evaluate(pt)

    def serialize(self):
        return self.poly.serialize()

    def __repr__(self):
        return f"{self.serialize()} (deg {self.degree})"

    def restrict_to_line(self, line):
        """Pull back along the standard parametrization of Z(line).

        The line is solved for its pivot variable (the largest-index
        variable with a nonzero coefficient); the two remaining variables
        become the parameters (s, t) in increasing index order.
        """
        if not isinstance(line, Form) or line.degree != 1:
            raise ValueError("line must be a degree-1 Form")
        if not line:
            raise ValueError("line must be nonzero")
        domain = self.domain
        coeffs = [
            line.poly.terms.get(tuple(1 if j == i else 0 for j in range(3)),
                                domain.zero)
            for i in range(3)
        ]
        pivot = max(i for i in range(3) if coeffs[i])
        params = [i for i in range(3) if i != pivot]
        # variable i maps to the binary linear form subs[i] = (s-coeff, t-coeff)
        subs = [None] * 3
        subs[params[0]] = BinaryForm(domain, 1, [domain.one, domain.zero])
        subs[params[1]] = BinaryForm(domain, 1, [domain.zero, domain.one])
        inv = coeffs[pivot].inverse()
        pivot_form = BinaryForm(
            domain,
            1,
            [-coeffs[params[0]] * inv, -coeffs[params[1]] * inv],
        )
        subs[pivot] = pivot_form
        result = BinaryForm.zero(domain, self.degree)
        for e, c in self.poly.terms.items():
            term = BinaryForm(domain, 0, [c])
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * subs[i]
            result = result + term.promoted(self.degree)
        return result

    def line_point(self, s, t):
        """The P2 point of Z(self) at parameter [s:t] (degree-1 forms only).

        Uses the same parametrization as restrict_to_line.
        """
        if self.degree != 1 or not self:
            raise ValueError("need a nonzero degree-1 form")
        domain = self.domain
        coeffs = [
            self.poly.terms.get(tuple(1 if j == i else 0 for j in range(3)),
                                domain.zero)
            for i in range(3)
        ]
        pivot = max(i for i in range(3) if coeffs[i])
        params = [i for i in range(3) if i != pivot]
        s = domain.scalar(s)
        t = domain.scalar(t)
        point = [domain.zero] * 3
        point[params[0]] = s
        point[params[1]] = t
        inv = coeffs[pivot].inverse()
        point[pivot] = -(coeffs[params[0]] * s + coeffs[params[1]] * t) * inv
        return tuple(point)


class BinaryForm:
    """Homogeneous polynomial in two parameters (s, t) over a domain.

    coefficients[i] is the coefficient of s^(degree-i) * t^i.
    """

    __slots__ = ("domain", "degree", "coefficients")

    def __init__(self, domain, degree, coefficients):
        if len(coefficients) != degree + 1:
            raise ValueError("coefficient list length must be degree + 1")
        self.domain = domain
        self.degree = degree
        self.coefficients = [domain.scalar(c) for c in coefficients]

    @classmethod
    def zero(cls, domain, degree):
        return cls(domain, degree, [domain.zero] * (degree + 1))

    def __bool__(self):
        return any(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if bool(self) != bool(other):
            return False
        if not self:
            return True
        return self.degree == other.degree and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.degree, tuple(self.coefficients)))

    def promoted(self, degree):
        """Reinterpret a zero form at a higher degree (no-op when nonzero)."""
        if self.degree == degree:
            return self
        if self:
            raise ValueError("cannot promote a nonzero form")
        return BinaryForm.zero(self.domain, degree)

    def __add__(self, other):
        if self.degree != other.degree:
            if not self:
                return other
            if not other:
                return self
            raise ValueError("degree mismatch")
        return BinaryForm(
            self.domain,
            self.degree,
            [a + b for a, b in zip(self.coefficients, other.coefficients)],
        )

    def __neg__(self):
        return BinaryForm(self.domain, self.degree,
                          [-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            c = self.domain.scalar(other)
            return BinaryForm(self.domain, self.degree,
                              [a * c for a in self.coefficients])
        d = self.degree + other.degree
        out = [self.domain.zero] * (d + 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(self.domain, d, out)

    __rmul__ = __mul__

    def evaluate(self, s, t):
        s = self.domain.scalar(s)
        t = self.domain.scalar(t)
        total = self.domain.zero
        for i, c in enumerate(self.coefficients):
            total = total + c * s ** (self.degree - i) * t**i
        return total

    def serialize(self):
        if not self:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            factors = []
            ks, kt = self.degree - i, i
            if ks:
                factors.append(f"s^{ks}" if ks > 1 else "s")
            if kt:
                factors.append(f"t^{kt}" if kt > 1 else "t")
            text = c.as_text() if hasattr(c, "as_text") else str(c)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            if factors and text == "1":
                body = "*".join(factors)
            elif factors:
                body = text + "*" + "*".join(factors)
            else:
                body = text
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return self.serialize()


# ---- parsing ----------------------------------------------------------


class ParseError(ValueError):
    """Raised on malformed polynomial text."""


class _Parser:
    """Recursive descent over: rationals, x0/x1/x2, + - * ^, parentheses."""

    def __init__(self, text, domain):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.domain = domain

    @staticmethod
    def _tokenize(text):
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*^()":
                tokens.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                    j += 1
                tokens.append(text[i:j])
                i = j
            elif ch == "x":
                if i + 1 < len(text) and text[i + 1] in "012":
                    tokens.append(text[i : i + 2])
                    i += 2
                else:
                    raise ParseError(f"bad variable at position {i}")
            else:
                raise ParseError(f"unexpected character {ch!r}")
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        poly = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at token {self.peek()!r}")
        return poly

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        poly = self.term()
        if sign < 0:
            poly = -poly
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            rhs = self.term()
            poly = poly + (rhs if sign > 0 else -rhs)
        return poly

    def term(self):
        poly = self.factor()
        while self.peek() == "*":
            self.next()
            poly = poly * self.factor()
        return poly

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if tok is None or not tok.isdigit():
                raise ParseError("expected integer exponent after '^'")
            base = base ** int(tok)
        return base

    def atom(self):
        tok = self.next()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "(":
            poly = self.expr()
            if self.next() != ")":
                raise ParseError("missing closing parenthesis")
            return poly
        if tok == "-":
            return -self.atom()
        if tok in VARIABLES:
            return MultiPoly.variable(self.domain, VARIABLES.index(tok))
        if tok[0].isdigit():
            try:
                return MultiPoly.constant(self.domain, self.domain.parse(tok))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad number {tok!r}: {exc}") from exc
        raise ParseError(f"unexpected token {tok!r}")


def parse_poly(text, domain=QQ):
    return _Parser(text, domain).parse()


def parse_form(text, expected_degree=None, domain=QQ):
    """Parse a homogeneous polynomial into a Form.

    The zero polynomial is accepted at any expected degree.
    """
    poly = parse_poly(text, domain)
    if not poly:
        return Form(poly, expected_degree if expected_degree is not None else 0)
    if not poly.is_homogeneous():
        raise ParseError(f"inhomogeneous polynomial: {text!r}")
    degree = poly.total_degree()
    if expected_degree is not None and degree != expected_degree:
        raise ParseError(
            f"degree mismatch: expected {expected_degree}, got {degree}"
        )
    return Form(poly, degree)


def evaluate(form, point):
    return form.evaluate(point)


def restrict_to_line(form, line):
    return form.restrict_to_line(line)


def monomials_of_degree(d):
    """Exponent triples of total degree d, in descending graded-lex order."""
    out = []
    for e0 in range(d, -1, -1):
        for e1 in range(d - e0, -1, -1):
            out.append((e0, e1, d - e0 - e1))
    return out


def coefficient_rows(forms, degree):
    """Coefficient vectors of the given forms over the degree-d monomials."""
    monos = monomials_of_degree(degree)
    rows = []
    for f in forms:
        if f.poly and f.degree != degree:
            raise ValueError(f"form of degree {f.degree}, expected {degree}")
        domain = f.domain
        rows.append([f.poly.terms.get(m, domain.zero) for m in monos])
    return rows


def scalar_matrix_rank(rows):
    """Rank of a matrix of field scalars by exact Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def linear_rank(forms, common_degree):
    """Rank of the coefficient matrix of forms of one common degree."""
    forms = list(forms)
    if not forms:
        return 0
    return scalar_matrix_rank(coefficient_rows(forms, common_degree))
