"""Dense matrices over a finite field and exact Gaussian elimination.

Entries are integer element codes (see :mod:`smallhull.field`). Fields with
dense tables get numpy row operations; larger fields fall back to
element-by-element arithmetic on object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from smallhull.field import FieldDescriptor, FieldElement, FieldMismatchError


class _Ops:
    """Vectorized add/mul/neg over integer codes of one field."""

    def __init__(self, field: FieldDescriptor):
        self.field = field
        self.dense = field.has_dense_tables
        if self.dense:
            self.add_t = field.add_table
            self.mul_t = field.mul_table
            self.neg_t = field.neg_table

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.dense:
            return self.add_t[a, b]
        f = self.field
        return np.array([f.add(int(x), int(y)) for x, y in zip(a, b)], dtype=object)

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        if self.dense:
            return self.mul_t[c, a]
        f = self.field
        return np.array([f.mul(c, int(x)) for x in a], dtype=object)

    def neg(self, a: np.ndarray) -> np.ndarray:
        if self.dense:
            return self.neg_t[a]
        f = self.field
        return np.array([f.neg(int(x)) for x in a], dtype=object)


_OPS_CACHE: dict[FieldDescriptor, _Ops] = {}


def ops_for(field: FieldDescriptor) -> _Ops:
    ops = _OPS_CACHE.get(field)
    if ops is None:
        ops = _OPS_CACHE[field] = _Ops(field)
    return ops


def _as_array(field: FieldDescriptor, data) -> np.ndarray:
    dtype = np.int64 if field.order < (1 << 62) else object
    arr = np.array(data, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return arr


@dataclass(frozen=True, eq=False)
class MatrixGF:
    """Matrix over ``field`` holding integer element codes."""

    field: FieldDescriptor
    data: np.ndarray

    @classmethod
    def from_rows(cls, field: FieldDescriptor, rows) -> MatrixGF:
        arr = _as_array(field, [[int(x) for x in row] for row in rows])
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: FieldDescriptor, nrows: int, ncols: int) -> MatrixGF:
        return cls(field, np.zeros((nrows, ncols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldDescriptor, n: int) -> MatrixGF:
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, idx) -> FieldElement:
        i, j = idx
        return self.field.element(int(self.data[i, j]))

    def rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.data]

    def to_elements(self) -> list[list[FieldElement]]:
        return [[self.field.element(int(x)) for x in row] for row in self.data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def _check(self, other: MatrixGF) -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    @property
    def T(self) -> MatrixGF:
        return MatrixGF(self.field, self.data.T.copy())

    def __add__(self, other: MatrixGF) -> MatrixGF:
        self._check(other)
        ops = ops_for(self.field)
        if ops.dense:
            return MatrixGF(self.field, ops.add_t[self.data, other.data])
        out = np.array(
            [ops.add(a, b) for a, b in zip(self.data, other.data)], dtype=self.data.dtype
        ).reshape(self.shape)
        return MatrixGF(self.field, out)

    def __neg__(self) -> MatrixGF:
        ops = ops_for(self.field)
        if ops.dense:
            return MatrixGF(self.field, ops.neg_t[self.data])
        return MatrixGF(self.field, np.array([ops.neg(r) for r in self.data]).reshape(self.shape))

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        self._check(other)
        a, b = self.data, other.data
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        f = self.field
        if f.degree == 1 and f.char < (1 << 20):
            p = f.char
            # column-blocked accumulate keeps int64 from overflowing
            out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
            for i in range(a.shape[1]):
                out = (out + np.outer(a[:, i], b[i, :])) % p
            return MatrixGF(f, out)
        ops = ops_for(f)
        if ops.dense:
            out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
            for i in range(a.shape[1]):
                out = ops.add_t[out, ops.mul_t[a[:, i][:, None], b[i, :][None, :]]]
            return MatrixGF(f, out)
        out = [[0] * b.shape[1] for _ in range(a.shape[0])]
        for i in range(a.shape[0]):
            for j in range(b.shape[1]):
                acc = 0
                for k in range(a.shape[1]):
                    acc = f.add(acc, f.mul(int(a[i, k]), int(b[k, j])))
                out[i][j] = acc
        return MatrixGF.from_rows(f, out)

    def hstack(self, other: MatrixGF) -> MatrixGF:
        self._check(other)
        return MatrixGF(self.field, np.hstack([self.data, other.data]))

    def vector_mul(self, vec: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        return (MatrixGF.from_rows(self.field, [list(vec)]) @ self).rows()[0]

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple[MatrixGF, list[int]]:
        """Reduced row echelon form and pivot columns.

        Pivoting takes the first nonzero entry scanning columns left to right
        and rows top to bottom, so results are reproducible.
        """
        f = self.field
        ops = ops_for(f)
        m = self.data.copy()
        prime = f.degree == 1 and f.char < (1 << 31) and m.dtype != object
        nrows, ncols = m.shape
        pivots: list[int] = []
        row = 0
        for col in range(ncols):
            if row == nrows:
                break
            nz = np.nonzero(m[row:, col])[0]
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                m[[row, piv]] = m[[piv, row]]
            inv = f.inv(int(m[row, col]))
            if inv != 1:
                m[row] = ops.scale(inv, m[row])
            factors = m[:, col].copy()
            factors[row] = 0
            if not factors.any():
                pass
            elif prime:
                m = (m - np.outer(factors, m[row])) % f.char
            elif ops.dense:
                m = ops.add_t[m, ops.mul_t[ops.neg_t[factors][:, None], m[row][None, :]]]
            else:
                for r in np.nonzero(factors)[0]:
                    r = int(r)
                    c = f.neg(int(m[r, col]))
                    m[r] = ops.add(m[r], ops.scale(c, m[row]))
            pivots.append(col)
            row += 1
        return MatrixGF(f, m[:row] if row else m[:0]), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> MatrixGF:
        """Basis (as rows) of {x : self @ x = 0}, one vector per free column."""
        f = self.field
        ncols = self.shape[1]
        red, pivots = self.rref()
        free = [c for c in range(ncols) if c not in set(pivots)]
        basis = []
        for fc in free:
            vec = [0] * ncols
            vec[fc] = 1
            for i, pc in enumerate(pivots):
                vec[pc] = f.neg(int(red.data[i, fc]))
            basis.append(vec)
        if not basis:
            return MatrixGF(f, np.zeros((0, ncols), dtype=np.int64))
        return MatrixGF.from_rows(f, basis)

    def left_nullspace(self) -> MatrixGF:
        """Basis of {y : y @ self = 0}."""
        return self.T.nullspace()

    def inverse(self) -> MatrixGF:
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = self.hstack(MatrixGF.identity(self.field, n))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise np.linalg.LinAlgError("matrix is singular")
        return MatrixGF(self.field, red.data[:, n:].copy())

    def is_zero(self) -> bool:
        return not np.any(self.data)


def rank_of_elements(rows: Sequence[Sequence[FieldElement]]) -> int:
    """Rank of a list of equal-length vectors of field elements."""
    if not rows:
        return 0
    field = rows[0][0].field
    return MatrixGF.from_rows(field, [[x.value for x in row] for row in rows]).rank()
