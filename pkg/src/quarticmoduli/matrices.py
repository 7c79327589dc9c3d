"""Graded matrices of forms: morphisms between sums of line-bundle twists.

Rows index source summands and columns index target summands, matching the
displayed convention res1 = [[z1, q1], [z2, q2]] with source degrees (3, 3)
and target degrees (2, 0).  Entry (i, j) is homogeneous of degree
src_degrees[i] - tgt_degrees[j]; a negative required degree forces zero.
"""

import json
import random

from .field import GF, QQ, PrimeField
from .poly import Form, MultiPoly, linear_rank, monomials_of_degree, parse_form


class DegreeError(ValueError):
    """Raised when an entry violates the graded degree contract."""


class FormMatrix:
    __slots__ = ("src_degrees", "tgt_degrees", "entries")

    def __init__(self, src_degrees, tgt_degrees, entries):
        self.src_degrees = tuple(src_degrees)
        self.tgt_degrees = tuple(tgt_degrees)
        if len(entries) != len(self.src_degrees):
            raise DegreeError("row count does not match src_degrees")
        grid = []
        for i, row in enumerate(entries):
            if len(row) != len(self.tgt_degrees):
                raise DegreeError(f"column count mismatch in row {i}")
            out_row = []
            for j, entry in enumerate(row):
                need = self.src_degrees[i] - self.tgt_degrees[j]
                if entry:
                    if need < 0 or entry.degree != need:
                        raise DegreeError(
                            f"entry ({i},{j}) must have degree {need}, "
                            f"got {entry.degree}: {entry.serialize()}"
                        )
                    out_row.append(entry)
                else:
                    out_row.append(Form.zero(entry.domain, max(need, 0)))
            grid.append(tuple(out_row))
        self.entries = tuple(grid)

    @property
    def nrows(self):
        return len(self.src_degrees)

    @property
    def ncols(self):
        return len(self.tgt_degrees)

    @property
    def domain(self):
        return self.entries[0][0].domain

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, FormMatrix):
            return NotImplemented
        return (
            self.src_degrees == other.src_degrees
            and self.tgt_degrees == other.tgt_degrees
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.src_degrees, self.tgt_degrees, self.entries))

    def __add__(self, other):
        if (
            self.src_degrees != other.src_degrees
            or self.tgt_degrees != other.tgt_degrees
        ):
            raise DegreeError("shape mismatch in matrix sum")
        return FormMatrix(
            self.src_degrees,
            self.tgt_degrees,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def scaled(self, scalar):
        return FormMatrix(
            self.src_degrees,
            self.tgt_degrees,
            [[e * scalar for e in row] for row in self.entries],
        )

    def row(self, i):
        return self.entries[i]

    def with_row(self, i, new_row):
        rows = [list(r) for r in self.entries]
        rows[i] = list(new_row)
        return FormMatrix(self.src_degrees, self.tgt_degrees, rows)

    def submatrix(self, rows, cols):
        return FormMatrix(
            [self.src_degrees[i] for i in rows],
            [self.tgt_degrees[j] for j in cols],
            [[self.entries[i][j] for j in cols] for i in rows],
        )

    def transpose(self):
        # transposing swaps the roles, negating degrees keeps entries valid
        return FormMatrix(
            [-d for d in self.tgt_degrees],
            [-d for d in self.src_degrees],
            [[self.entries[i][j] for i in range(self.nrows)]
             for j in range(self.ncols)],
        )

    def determinant(self):
        """Exact determinant, homogeneous of degree sum(src) - sum(tgt).

        Cofactor expansion along the sparsest row or column; matrix sizes in
        this package never exceed 5.
        """
        if self.nrows != self.ncols:
            raise DegreeError("determinant of a non-square matrix")
        degree = sum(self.src_degrees) - sum(self.tgt_degrees)
        poly = _det_poly([[e.poly for e in row] for row in self.entries])
        return Form(poly, degree if degree >= 0 else 0)

    def maximal_minors(self):
        """Signed maximal minors.

        For r < c the j-th minor deletes column j and carries sign (-1)^j,
        so that bordering with a top row q gives the Laplace identity
        det = sum_j q[j] * minor[j].  For r > c rows are deleted instead,
        with sign (-1)^i.
        """
        if self.nrows <= self.ncols:
            n = self.nrows
            minors = []
            all_rows = list(range(n))
            for j in range(self.ncols):
                cols = [k for k in range(self.ncols) if k != j]
                if len(cols) != n:
                    raise DegreeError("need an (n)x(n+1) shape for minors")
                m = self.submatrix(all_rows, cols).determinant()
                minors.append(m if j % 2 == 0 else -m)
            return minors
        n = self.ncols
        minors = []
        all_cols = list(range(n))
        for i in range(self.nrows):
            rows = [k for k in range(self.nrows) if k != i]
            if len(rows) != n:
                raise DegreeError("need an (n+1)x(n) shape for minors")
            m = self.submatrix(rows, all_cols).determinant()
            minors.append(m if i % 2 == 0 else -m)
        return minors

    def linear_part(self):
        """The rows whose entries are all linear (degree-1 target shift)."""
        rows = [
            i
            for i in range(self.nrows)
            if all(self.src_degrees[i] - d == 1 for d in self.tgt_degrees)
        ]
        return self.submatrix(rows, list(range(self.ncols)))

    def serialize_entries(self):
        return [[e.serialize() for e in row] for row in self.entries]

    def to_json_dict(self):
        return {
            "src_degrees": list(self.src_degrees),
            "tgt_degrees": list(self.tgt_degrees),
            "entries": self.serialize_entries(),
        }

    def __repr__(self):
        rows = "\n".join(
            "  [" + ", ".join(e.serialize() for e in row) + "]"
            for row in self.entries
        )
        return f"FormMatrix(src={self.src_degrees}, tgt={self.tgt_degrees},\n{rows})"


def _det_poly(grid):
    n = len(grid)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    # expand along the row or column with the most zero entries
    row_zeros = [sum(1 for e in row if not e) for row in grid]
    col_zeros = [sum(1 for row in grid if not row[j]) for j in range(n)]
    bi, bz = max(enumerate(row_zeros), key=lambda t: t[1])
    bj, cz = max(enumerate(col_zeros), key=lambda t: t[1])
    total = None
    if bz >= cz:
        for j, e in enumerate(grid[bi]):
            if not e:
                continue
            sub = [
                [grid[i][k] for k in range(n) if k != j]
                for i in range(n)
                if i != bi
            ]
            term = e * _det_poly(sub)
            if (bi + j) % 2:
                term = -term
            total = term if total is None else total + term
    else:
        for i in range(n):
            e = grid[i][bj]
            if not e:
                continue
            sub = [
                [grid[k][m] for m in range(n) if m != bj]
                for k in range(n)
                if k != i
            ]
            term = e * _det_poly(sub)
            if (i + bj) % 2:
                term = -term
            total = term if total is None else total + term
    if total is None:
        return MultiPoly.zero(grid[0][0].domain)
    return total


def make_matrix(src_degrees, tgt_degrees, entry_texts, domain=QQ):
    """Parse a grid of polynomial texts into a degree-checked FormMatrix."""
    entries = []
    for i, row in enumerate(entry_texts):
        out_row = []
        for j, text in enumerate(row):
            need = src_degrees[i] - tgt_degrees[j]
            form = parse_form(text, domain=domain)
            if form and (need < 0 or form.degree != need):
                raise DegreeError(
                    f"entry ({i},{j}) must have degree {need}, "
                    f"got {form.degree}: {text!r}"
                )
            if not form:
                form = Form.zero(domain, max(need, 0))
            out_row.append(form)
        entries.append(out_row)
    return FormMatrix(src_degrees, tgt_degrees, entries)


def matrix_from_json_dict(data, domain=QQ):
    return make_matrix(
        data["src_degrees"], data["tgt_degrees"], data["entries"], domain
    )


def load_matrix(path, domain=QQ):
    with open(path) as fh:
        return matrix_from_json_dict(json.load(fh), domain)


def save_matrix(matrix, path):
    with open(path, "w") as fh:
        json.dump(matrix.to_json_dict(), fh, indent=2)
        fh.write("\n")


class GradedAutomorphism:
    """An invertible degree-filtered square matrix acting on one side.

    Entries below the filtration (src[i] - src[j] < 0) vanish and the
    constant blocks on each degree class must be invertible.
    """

    def __init__(self, matrix):
        if matrix.src_degrees != matrix.tgt_degrees:
            raise DegreeError("automorphism needs equal src and tgt degrees")
        self.matrix = matrix
        for d in set(matrix.src_degrees):
            idx = [i for i, s in enumerate(matrix.src_degrees) if s == d]
            block = matrix.submatrix(idx, idx)
            if not block.determinant():
                raise DegreeError(
                    f"scalar block for degree {d} is not invertible"
                )

    @property
    def degrees(self):
        return self.matrix.src_degrees

    def determinant(self):
        return self.matrix.determinant()


def act(g, a, h):
    """The product g * a * h of graded automorphisms around a matrix."""
    if isinstance(g, GradedAutomorphism):
        g = g.matrix
    if isinstance(h, GradedAutomorphism):
        h = h.matrix
    if g.tgt_degrees != a.src_degrees:
        raise DegreeError("left automorphism does not match source degrees")
    if a.tgt_degrees != h.src_degrees:
        raise DegreeError("right automorphism does not match target degrees")
    ga = _multiply(g, a)
    return _multiply(ga, h)


def _multiply(a, b):
    domain = a.domain
    entries = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            total = MultiPoly.zero(domain)
            for k in range(a.ncols):
                total = total + a[i, k].poly * b[k, j].poly
            need = a.src_degrees[i] - b.tgt_degrees[j]
            row.append(Form(total, max(need, 0)))
        entries.append(row)
    return FormMatrix(a.src_degrees, b.tgt_degrees, entries)


def identity_automorphism(degrees, domain=QQ):
    one = MultiPoly.constant(domain, 1)
    zero = MultiPoly.zero(domain)
    entries = [
        [
            Form(one if i == j else zero, max(degrees[i] - degrees[j], 0))
            for j in range(len(degrees))
        ]
        for i in range(len(degrees))
    ]
    return GradedAutomorphism(FormMatrix(degrees, degrees, entries))


# ---- elementary operations --------------------------------------------


class ElementaryOp:
    """A recorded, replayable, degree-checked elementary operation."""

    def apply(self, matrix):
        raise NotImplementedError

    def determinant_scale(self, domain):
        """Factor by which the operation multiplies a determinant."""
        return domain.one


class SwapRows(ElementaryOp):
    def __init__(self, i, j):
        self.i, self.j = i, j

    def apply(self, m):
        if m.src_degrees[self.i] != m.src_degrees[self.j]:
            raise DegreeError("can only swap rows of equal source degree")
        rows = [list(r) for r in m.entries]
        rows[self.i], rows[self.j] = rows[self.j], rows[self.i]
        return FormMatrix(m.src_degrees, m.tgt_degrees, rows)

    def determinant_scale(self, domain):
        return -domain.one


class SwapCols(ElementaryOp):
    def __init__(self, i, j):
        self.i, self.j = i, j

    def apply(self, m):
        if m.tgt_degrees[self.i] != m.tgt_degrees[self.j]:
            raise DegreeError("can only swap columns of equal target degree")
        rows = [list(r) for r in m.entries]
        for row in rows:
            row[self.i], row[self.j] = row[self.j], row[self.i]
        return FormMatrix(m.src_degrees, m.tgt_degrees, rows)

    def determinant_scale(self, domain):
        return -domain.one


class ScaleRow(ElementaryOp):
    def __init__(self, i, scalar):
        self.i, self.scalar = i, scalar

    def apply(self, m):
        c = m.domain.scalar(self.scalar)
        if not c:
            raise DegreeError("row scale must be nonzero")
        rows = [list(r) for r in m.entries]
        rows[self.i] = [e * c for e in rows[self.i]]
        return FormMatrix(m.src_degrees, m.tgt_degrees, rows)

    def determinant_scale(self, domain):
        return domain.scalar(self.scalar)


class ScaleCol(ElementaryOp):
    def __init__(self, j, scalar):
        self.j, self.scalar = j, scalar

    def apply(self, m):
        c = m.domain.scalar(self.scalar)
        if not c:
            raise DegreeError("column scale must be nonzero")
        rows = [list(r) for r in m.entries]
        for row in rows:
            row[self.j] = row[self.j] * c
        return FormMatrix(m.src_degrees, m.tgt_degrees, rows)

    def determinant_scale(self, domain):
        return domain.scalar(self.scalar)


class AddMultipleOfRow(ElementaryOp):
    """target_row += multiplier * source_row, degree bookkeeping enforced."""

    def __init__(self, target, source, multiplier):
        self.target, self.source, self.multiplier = target, source, multiplier

    def apply(self, m):
        mult = self.multiplier
        need = m.src_degrees[self.target] - m.src_degrees[self.source]
        if mult.degree != need and mult:
            raise DegreeError(
                f"row multiplier must have degree {need}, got {mult.degree}"
            )
        rows = [list(r) for r in m.entries]
        rows[self.target] = [
            a + mult * b for a, b in zip(rows[self.target], rows[self.source])
        ]
        return FormMatrix(m.src_degrees, m.tgt_degrees, rows)


class AddMultipleOfCol(ElementaryOp):
    """target_col += multiplier * source_col."""

    def __init__(self, target, source, multiplier):
        self.target, self.source, self.multiplier = target, source, multiplier

    def apply(self, m):
        mult = self.multiplier
        need = m.tgt_degrees[self.source] - m.tgt_degrees[self.target]
        if mult.degree != need and mult:
            raise DegreeError(
                f"column multiplier must have degree {need}, got {mult.degree}"
            )
        rows = [list(r) for r in m.entries]
        for row in rows:
            row[self.target] = row[self.target] + mult * row[self.source]
        return FormMatrix(m.src_degrees, m.tgt_degrees, rows)


def elementary_op(matrix, op):
    return op.apply(matrix)


def apply_ops(matrix, ops):
    for op in ops:
        matrix = op.apply(matrix)
    return matrix


def ops_determinant_scale(ops, domain):
    total = domain.one
    for op in ops:
        total = total * op.determinant_scale(domain)
    return total


# ---- stability and sampling -------------------------------------------


def is_stable_kronecker(k):
    """A 2x3 matrix of linear forms is stable iff its minors span rank 3."""
    if k.nrows != 2 or k.ncols != 3:
        raise DegreeError("Kronecker module must be 2x3")
    for row in k.entries:
        for e in row:
            if e and e.degree != 1:
                raise DegreeError("Kronecker entries must be linear")
    minors = k.maximal_minors()
    return linear_rank(minors, 2) == 3


SHAPES = {
    "res0": ((3, 2, 2), (1, 1, 1)),
    "res1": ((3, 3), (2, 0)),
}


def random_form(domain, degree, rng):
    if not isinstance(domain, PrimeField):
        raise ValueError("random sampling needs a prime field")
    terms = {}
    for mono in monomials_of_degree(degree):
        c = domain.scalar(rng.randrange(domain.p))
        if c:
            terms[mono] = c
    return Form(MultiPoly(domain, terms), degree)


def random_matrix(shape, field, seed=None, rng=None):
    """Uniform random matrix of a named shape; deterministic per seed."""
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}; known: {sorted(SHAPES)}")
    if rng is None:
        rng = random.Random(seed)
    src, tgt = SHAPES[shape]
    entries = [
        [random_form(field, s - t, rng) for t in tgt] for s in src
    ]
    return FormMatrix(src, tgt, entries)


def random_graded_automorphism(degrees, field, rng):
    """A random invertible graded automorphism for the given degrees."""
    n = len(degrees)
    while True:
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                d = degrees[i] - degrees[j]
                if d < 0:
                    row.append(Form.zero(field, 0))
                else:
                    row.append(random_form(field, d, rng))
            entries.append(row)
        m = FormMatrix(degrees, degrees, entries)
        try:
            return GradedAutomorphism(m)
        except DegreeError:
            continue
