"""Exact coefficient domains: the rationals, prime fields, and parameter rings.

All arithmetic is exact; there is no floating point anywhere in the package.
Scalars are tagged with their domain and refuse to mix with scalars of a
different domain.
"""

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when scalars over different domains are combined."""


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Domain:
    """Base class for coefficient domains."""

    is_field = False

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def check_same(self, other):
        if self != other:
            raise FieldMismatchError(f"domain mismatch: {self} vs {other}")


class Rationals(Domain):
    """The field of arbitrary-precision rationals."""

    is_field = True

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def scalar(self, value):
        if isinstance(value, FieldScalar):
            self.check_same(value.domain)
            return value
        return FieldScalar(self, Fraction(value))

    def parse(self, text):
        return FieldScalar(self, Fraction(text.strip()))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Domain):
    """The prime field of odd order p < 2**62."""

    is_field = True

    def __init__(self, p):
        if not _is_prime(p) or p == 2 or p >= 2**62:
            raise ValueError(f"need an odd prime < 2^62, got {p}")
        self.p = p

    def scalar(self, value):
        if isinstance(value, FieldScalar):
            self.check_same(value.domain)
            return value
        if isinstance(value, Fraction):
            num = value.numerator % self.p
            den = pow(value.denominator % self.p, -1, self.p)
            return FieldScalar(self, num * den % self.p)
        return FieldScalar(self, value % self.p)

    def parse(self, text):
        return self.scalar(Fraction(text.strip()))

    def elements(self):
        return (FieldScalar(self, v) for v in range(self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


_PRIME_FIELDS = {}


def GF(p):
    field = _PRIME_FIELDS.get(p)
    if field is None:
        field = _PRIME_FIELDS[p] = PrimeField(p)
    return field


class FieldScalar:
    """An exact element of QQ or of a prime field.

    Rationals are kept in lowest terms with positive denominator (the
    Fraction invariant); prime-field residues are kept in [0, p).
    """

    __slots__ = ("domain", "value")

    def __init__(self, domain, value):
        self.domain = domain
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            self.domain.check_same(other.domain)
            return other
        if isinstance(other, (int, Fraction)):
            return self.domain.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        v = self.value + other.value
        if isinstance(self.domain, PrimeField):
            v %= self.domain.p
        return FieldScalar(self.domain, v)

    __radd__ = __add__

    def __neg__(self):
        if isinstance(self.domain, PrimeField):
            return FieldScalar(self.domain, -self.value % self.domain.p)
        return FieldScalar(self.domain, -self.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        v = self.value * other.value
        if isinstance(self.domain, PrimeField):
            v %= self.domain.p
        return FieldScalar(self.domain, v)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if isinstance(self.domain, PrimeField):
            return FieldScalar(self.domain, pow(self.value, -1, self.domain.p))
        return FieldScalar(self.domain, 1 / self.value)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.domain.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.domain.scalar(other)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.domain == other.domain and self.value == other.value

    def __hash__(self):
        return hash((self.domain, self.value))

    def __repr__(self):
        return f"{self.value}"

    def as_text(self):
        return str(self.value)


class ParamRing(Domain):
    """Polynomial ring in named parameters over a base field.

    Used by the verification layer to carry symbolic chart parameters
    (alpha, beta, a, b, c, d, t, ...) through matrix arithmetic.  It is a
    ring, not a field: only +, -, * and equality are supported.
    """

    is_field = False

    def __init__(self, base, names):
        self.base = base
        self.names = tuple(names)

    def scalar(self, value):
        if isinstance(value, ParamScalar):
            self.check_same(value.domain)
            return value
        c = self.base.scalar(value)
        zero_exp = (0,) * len(self.names)
        return ParamScalar(self, {zero_exp: c} if c else {})

    def variable(self, name):
        i = self.names.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return ParamScalar(self, {exp: self.base.one})

    def __repr__(self):
        return f"{self.base}[{', '.join(self.names)}]"

    def __eq__(self, other):
        return (
            isinstance(other, ParamRing)
            and other.base == self.base
            and other.names == self.names
        )

    def __hash__(self):
        return hash(("params", self.base, self.names))


class ParamScalar:
    """An element of a ParamRing: exponent tuples mapped to base scalars."""

    __slots__ = ("domain", "terms")

    def __init__(self, domain, terms):
        self.domain = domain
        self.terms = {e: c for e, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, ParamScalar):
            self.domain.check_same(other.domain)
            return other
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self.domain.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, self.domain.base.zero) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return ParamScalar(self.domain, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(self.domain, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, self.domain.base.zero) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return ParamScalar(self.domain, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.domain.one
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.domain, frozenset(self.terms.items())))

    def substitute(self, values):
        """Evaluate at a dict name -> base scalar, returning a base scalar."""
        missing = [n for n in self.domain.names if n not in values]
        if missing:
            raise ValueError(f"missing parameter values: {missing}")
        vals = [self.domain.base.scalar(values[n]) for n in self.domain.names]
        total = self.domain.base.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                for _ in range(k):
                    term = term * v
            total = total + term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{n}^{k}" if k > 1 else n
                for n, k in zip(self.domain.names, e)
                if k
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)
