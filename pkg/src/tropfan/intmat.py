"""Dense exact integer matrices.

Entries are Python ints (arbitrary precision), stored row-major as a list of
lists. This is the carrier type for every boundary, inclusion and cap matrix
in the package; nothing here is numeric-approximate.
"""

from __future__ import annotations

from fractions import Fraction


class IntMatrix:
    """An immutable-by-convention integer matrix. Zero dimensions are legal."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("data shape mismatch")
            self.data = [[int(x) for x in row] for row in data]

    @classmethod
    def from_rows(cls, rows_data):
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        return cls(rows, cols, rows_data)

    @classmethod
    def from_cols(cls, cols_data, rows=None):
        cols = len(cols_data)
        if rows is None:
            if cols == 0:
                raise ValueError("cannot infer row count of an empty column list")
            rows = len(cols_data[0])
        data = [[cols_data[j][i] for j in range(cols)] for i in range(rows)]
        return cls(rows, cols, data)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    def copy(self):
        return IntMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, row_idx, col_idx):
        return IntMatrix(
            len(row_idx), len(col_idx), [[self.data[i][j] for j in col_idx] for i in row_idx]
        )

    def transpose(self):
        return IntMatrix(
            self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(
                self.rows, self.cols, [[x * other for x in row] for row in self.data]
            )
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        out = IntMatrix(self.rows, other.cols)
        a, b, o = self.data, other.data, out.data
        for i in range(self.rows):
            ai, oi = a[i], o[i]
            for k in range(self.cols):
                aik = ai[k]
                if aik:
                    bk = b[k]
                    for j in range(other.cols):
                        oi[j] += aik * bk[j]
        return out

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return IntMatrix(
            self.rows,
            self.cols,
            [[self.data[i][j] + other.data[i][j] for j in range(self.cols)] for i in range(self.rows)],
        )

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def mul_vector(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(self.data[i][j] * vec[j] for j in range(self.cols)) for i in range(self.rows)]

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            [self.data[i] + other.data[i] for i in range(self.rows)],
        )


def hstack_all(mats):
    """Concatenate matrices side by side; all must share a row count."""
    if not mats:
        raise ValueError("empty hstack")
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def det_int(m: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [row[:] for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(a: IntMatrix, b: IntMatrix):
    """Solve a*X = b over Q for a with full column rank.

    Returns the unique rational solution as a list-of-lists of Fractions, or
    raises ValueError when the system is inconsistent or a has dependent
    columns. a may be rectangular (rows >= cols).
    """
    rows, cols = a.rows, a.cols
    if b.rows != rows:
        raise ValueError("shape mismatch in solve")
    # Gaussian elimination on the augmented system, over Fractions.
    aug = [[Fraction(a.data[i][j]) for j in range(cols)] + [Fraction(x) for x in b.data[i]]
           for i in range(rows)]
    width = cols + b.cols
    piv_rows = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix does not have full column rank")
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    # Consistency: rows beyond the pivot rows must be zero on the rhs too.
    for i in range(r, rows):
        if any(aug[i][j] != 0 for j in range(cols, width)):
            raise ValueError("inconsistent system")
    return [[aug[i][cols + j] for j in range(b.cols)] for i in range(cols)]


def solve_int(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Solve a*X = b insisting on an integral solution."""
    sol = solve_exact(a, b)
    out = []
    for row in sol:
        int_row = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("solution is not integral")
            int_row.append(int(x))
        out.append(int_row)
    return IntMatrix(a.cols, b.cols, out)
