"""Dense exact-rational matrices: elimination, rank, kernel, solving.

Everything downstream (intertwiner spaces, chain maps modulo homotopy,
radical filtrations) reduces to row reduction over ``fractions.Fraction``.
Matrices here are small and dense, so plain Gaussian elimination with
first-nonzero pivoting is deterministic and fast enough; no floating point
ever enters.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ExactMatrix:
    """A rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[ZERO] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("data shape mismatch")
            self.data = [[Fraction(x) for x in row] for row in data]

    @staticmethod
    def identity(k: int) -> "ExactMatrix":
        m = ExactMatrix(k, k)
        for i in range(k):
            m.data[i][i] = ONE
        return m

    @staticmethod
    def from_rows(rows_list) -> "ExactMatrix":
        rows_list = [list(r) for r in rows_list]
        cols = len(rows_list[0]) if rows_list else 0
        return ExactMatrix(len(rows_list), cols, rows_list)

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, self.data)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        out = ExactMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            out_row = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if a == 0:
                    continue
                other_row = other.data[k]
                for j in range(other.cols):
                    b = other_row[j]
                    if b != 0:
                        out_row[j] += a * b
        return out

    def apply(self, vec: list[Fraction]) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            sum((row[j] * vec[j] for j in range(self.cols) if vec[j] != 0), ZERO)
            for row in self.data
        ]

    def add(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix(self.rows, self.cols, [[c * x for x in row] for row in self.data])

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        """Reduced row echelon form and its pivot columns."""
        m = self.copy()
        pivots = []
        r = 0
        for c in range(m.cols):
            pivot_row = next((i for i in range(r, m.rows) if m.data[i][c] != 0), None)
            if pivot_row is None:
                continue
            m.data[r], m.data[pivot_row] = m.data[pivot_row], m.data[r]
            pv = m.data[r][c]
            if pv != 1:
                m.data[r] = [x / pv for x in m.data[r]]
            for i in range(m.rows):
                if i != r and m.data[i][c] != 0:
                    f = m.data[i][c]
                    m.data[i] = [a - f * b for a, b in zip(m.data[i], m.data[r])]
            pivots.append(c)
            r += 1
            if r == m.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one vector per free column."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            vec = [ZERO] * self.cols
            vec[fc] = ONE
            for r, pc in enumerate(pivots):
                vec[pc] = -red.data[r][fc]
            basis.append(vec)
        return basis

    def solve(self, rhs: list[Fraction]):
        """One solution of A x = rhs, or None if inconsistent."""
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = ExactMatrix(
            self.rows, self.cols + 1, [row + [Fraction(v)] for row, v in zip(self.data, rhs)]
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.data[r][self.cols]
        return x

    def column_space_coords(self, basis_cols: list[int]):
        """Solver expressing vectors in the span of the given columns.

        Returns a function vec -> coordinates (or None if outside the span).
        """
        sub = ExactMatrix(
            self.rows, len(basis_cols), [[row[c] for c in basis_cols] for row in self.data]
        )

        def express(vec):
            return sub.solve(vec)

        return express


def stack_rows(mats: list[ExactMatrix]) -> ExactMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    cols = mats[0].cols
    rows = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch")
        rows.extend(m.data)
    return ExactMatrix(len(rows), cols, rows)


def span_basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """A subset-echelon basis of the span of the given vectors."""
    if not vectors:
        return []
    m = ExactMatrix.from_rows(vectors)
    red, pivots = m.rref()
    return [red.data[i] for i in range(len(pivots))]


def in_span(vectors: list[list[Fraction]], target: list[Fraction]) -> bool:
    if not vectors:
        return all(x == 0 for x in target)
    m = ExactMatrix.from_rows(vectors).transpose()
    return m.solve(list(target)) is not None
