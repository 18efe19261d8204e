"""Immutable dense matrices over Gaussian rationals.

Rows are stored as a tuple of tuples of GaussianRational, so matrices hash
and compare structurally. All arithmetic is exact. The zero-row/zero-column
cases are legal (an empty matrix is its own Drazin inverse with index 0),
which keeps block recursions free of special cases; validation against empty
shapes happens at the JSON boundary instead.

Multiplication skips zero entries of the left factor. The formula engines
produce extremely sparse intermediates (block matrices with few nonzero
blocks), and the skip turns most of those products into near no-ops.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError
from .scalar import ONE, ZERO, GaussianRational


def _entry(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"matrix entries must be scalars, got {type(value).__name__}")


class Matrix:
    """Immutable rows x cols matrix of GaussianRational entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence], *, cols: int | None = None):
        rows = tuple(tuple(_entry(v) for v in row) for row in data)
        if rows:
            ncols = len(rows[0])
            if cols is not None and cols != ncols:
                raise DimensionError("cols hint disagrees with row length")
        else:
            # A rowless matrix carries no width in its data; take the hint.
            ncols = cols or 0
        for row in rows:
            if len(row) != ncols:
                raise DimensionError("ragged rows in matrix literal")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a matrix from a 2-D grid of conformant blocks."""
        if not blocks or not blocks[0]:
            raise DimensionError("empty block grid")
        ncols_grid = len(blocks[0])
        for brow in blocks:
            if len(brow) != ncols_grid:
                raise DimensionError("ragged block grid")
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionError("block row heights disagree")
        for j in range(ncols_grid):
            w = blocks[0][j].cols
            if any(brow[j].cols != w for brow in blocks):
                raise DimensionError("block column widths disagree")
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.data[i])
                out.append(row)
        return cls(out, cols=sum(b.cols for b in blocks[0]))

    # -- shape / access --------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i: int):
        return self.data[i]

    def submatrix(self, row_indices, col_indices) -> "Matrix":
        col_list = list(col_indices)
        return Matrix(
            [[self.data[i][j] for j in col_list] for i in row_indices],
            cols=len(col_list),
        )

    def is_zero(self) -> bool:
        return all(not v for row in self.data for v in row)

    # -- arithmetic --------------------------------------------------------------

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self):
        return Matrix([[-v for v in row] for row in self.data])

    def scale(self, scalar) -> "Matrix":
        s = _entry(scalar)
        return Matrix([[s * v for v in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._matmul(other)

    def _matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        odata = other.data
        out = []
        for lrow in self.data:
            acc = [ZERO] * other.cols
            for k, lv in enumerate(lrow):
                if not lv:
                    continue
                orow = odata[k]
                for j, rv in enumerate(orow):
                    if rv:
                        acc[j] = acc[j] + lv * rv
            out.append(acc)
        return Matrix(out, cols=other.cols)

    def __pow__(self, exponent: int) -> "Matrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if exponent < 0:
            raise ValueError("negative matrix power not supported here")
        result = Matrix.identity(self.rows)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    # -- protocol ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Matrix.zeros({self.rows}, {self.cols})"
        body = ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.data
        )
        return f"Matrix([{body}])"
