"""Sparse matrices over exact scalars (Python ints, Fractions, or residues)."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class Matrix:
    """Column-sparse matrix; column ``j`` is a dict ``row -> nonzero entry``.

    Entries are exact Python numbers, so integer matrices never overflow.

    >>> m = Matrix.from_dense([[2, 4], [6, 8]])
    >>> m.to_dense()
    [[2, 4], [6, 8]]
    >>> (m @ Matrix.identity(2)) == m
    True
    """

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, columns: Sequence[Mapping[int, object]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if columns is None:
            self._cols: list[dict] = [{} for _ in range(ncols)]
        else:
            if len(columns) != ncols:
                raise ValueError(f"expected {ncols} columns, got {len(columns)}")
            cols = []
            for col in columns:
                clean = {}
                for i, x in col.items():
                    if not 0 <= i < nrows:
                        raise IndexError(f"row index {i} outside 0..{nrows - 1}")
                    if x != 0:
                        clean[i] = x
                cols.append(clean)
            self._cols = cols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{j: 1} for j in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
        cols = [{i: rows[i][j] for i in range(nrows) if rows[i][j] != 0} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object]) -> "Matrix":
        cols: list[dict] = [{} for _ in range(ncols)]
        for (i, j), x in entries.items():
            if not 0 <= j < ncols:
                raise IndexError(f"column index {j} outside 0..{ncols - 1}")
            cols[j][i] = x
        return cls(nrows, ncols, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> dict:
        return self._cols[j]

    def columns(self) -> list[dict]:
        return self._cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self._cols[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return all(not c for c in self._cols)

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def rows(self) -> list[dict]:
        """Row-major view: list of dicts ``col -> entry``."""
        out: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.rows())

    def apply(self, vec: Mapping[int, object]) -> dict:
        """Multiply by a sparse column vector ``index -> value``."""
        out: dict = {}
        for j, a in vec.items():
            for i, x in self._cols[j].items():
                y = out.get(i, 0) + a * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.nrows, other.ncols, [self.apply(c) for c in other._cols])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        cols = []
        for a, b in zip(self._cols, other._cols):
            c = dict(a)
            for i, x in b.items():
                y = c.get(i, 0) + x
                if y:
                    c[i] = y
                else:
                    c.pop(i, None)
            cols.append(c)
        return Matrix(self.nrows, self.ncols, cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, a) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{i: a * x for i, x in c.items()} for c in self._cols])

    def map_entries(self, f) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{i: f(x) for i, x in c.items()} for c in self._cols])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows = list(rows)
        pos = {r: k for k, r in enumerate(rows)}
        new_cols = []
        for j in cols:
            new_cols.append({pos[i]: x for i, x in self._cols[j].items() if i in pos})
        return Matrix(len(rows), len(new_cols), new_cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(sorted(c.items())) for c in self._cols)))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            return f"Matrix({self.to_dense()!r})"
        return f"<Matrix {self.nrows}x{self.ncols}, {self.nnz()} nonzeros>"


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int], blocks: Mapping[tuple[int, int], Matrix]) -> Matrix:
    """Assemble a matrix from blocks keyed by (block row, block column)."""
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    cols: list[dict] = [{} for _ in range(col_off[-1])]
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block {(bi, bj)} has shape {m.shape}, expected {(row_sizes[bi], col_sizes[bj])}")
        for j, col in enumerate(m.columns()):
            target = cols[col_off[bj] + j]
            for i, x in col.items():
                target[row_off[bi] + i] = target.get(row_off[bi] + i, 0) + x
    return Matrix(row_off[-1], col_off[-1], cols)
