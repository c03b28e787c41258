"""Exact sparse integer matrices.

Thin immutable wrapper over a ``{(row, col): int}`` dict of nonzeros; all
arithmetic is exact over the integers.  The multiply/Kronecker hot paths go
through :mod:`dkchains.kernels`.
"""
from __future__ import annotations


class IntMatrix:
    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows, ncols, data=None):
        self.nrows = nrows
        self.ncols = ncols
        self.data = {k: v for k, v in (data or {}).items() if v}

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    data[(i, j)] = int(v)
        return cls(nrows, ncols, data)

    @classmethod
    def permutation(cls, targets, nrows=None):
        """Column j carries a single 1 in row targets[j]."""
        n = len(targets)
        return cls(nrows if nrows is not None else n, n,
                   {(t, j): 1 for j, t in enumerate(targets)})

    @classmethod
    def column(cls, values):
        return cls.from_rows([[v] for v in values])

    # -- basics -------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        return self.data.get(ij, 0)

    def nnz(self):
        return len(self.data)

    def is_zero(self):
        return not self.data

    def max_abs(self):
        return max((abs(v) for v in self.data.values()), default=0)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.shape, frozenset(self.data.items())))

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def to_rows(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            rows[i][j] = v
        return rows

    def entries(self):
        """Nonzeros in deterministic (row, col) order."""
        for key in sorted(self.data):
            yield key, self.data[key]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        self._check_same_shape(other)
        data = dict(self.data)
        for k, v in other.data.items():
            s = data.get(k, 0) + v
            if s:
                data[k] = s
            else:
                data.pop(k, None)
        return IntMatrix(self.nrows, self.ncols, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntMatrix(self.nrows, self.ncols,
                         {k: -v for k, v in self.data.items()})

    def scale(self, c):
        if c == 0:
            return IntMatrix.zeros(self.nrows, self.ncols)
        return IntMatrix(self.nrows, self.ncols,
                         {k: c * v for k, v in self.data.items()})

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: {self.shape} @ {other.shape}")
        from . import kernels
        data = kernels.matmul(self.nrows, self.ncols, self.data,
                              other.ncols, other.data)
        return IntMatrix(self.nrows, other.ncols, data)

    def kron(self, other):
        from . import kernels
        data = kernels.kron(self.nrows, self.ncols, self.data,
                            other.nrows, other.ncols, other.data)
        return IntMatrix(self.nrows * other.nrows,
                         self.ncols * other.ncols, data)

    def transpose(self):
        return IntMatrix(self.ncols, self.nrows,
                         {(j, i): v for (i, j), v in self.data.items()})

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        data = dict(self.data)
        for (i, j), v in other.data.items():
            data[(i, j + self.ncols)] = v
        return IntMatrix(self.nrows, self.ncols + other.ncols, data)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        data = dict(self.data)
        for (i, j), v in other.data.items():
            data[(i + self.nrows, j)] = v
        return IntMatrix(self.nrows + other.nrows, self.ncols, data)

    def submatrix(self, row_indices, col_indices):
        rmap = {r: i for i, r in enumerate(row_indices)}
        cmap = {c: j for j, c in enumerate(col_indices)}
        data = {}
        for (i, j), v in self.data.items():
            if i in rmap and j in cmap:
                data[(rmap[i], cmap[j])] = v
        return IntMatrix(len(row_indices), len(col_indices), data)

    def column_vector(self, j):
        return [self.data.get((i, j), 0) for i in range(self.nrows)]

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")


def assemble_blocks(nrows, ncols, placements):
    """Place (row_offset, col_offset, IntMatrix) blocks, summing overlaps."""
    data = {}
    for roff, coff, block in placements:
        for (i, j), v in block.data.items():
            key = (roff + i, coff + j)
            s = data.get(key, 0) + v
            if s:
                data[key] = s
            else:
                data.pop(key, None)
    return IntMatrix(nrows, ncols, data)
