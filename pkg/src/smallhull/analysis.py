"""Linear codes over GF(q): Gram matrix, dual, hull and weight distribution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from smallhull.field import FieldDescriptor
from smallhull.linalg import MatrixGF, ops_for

LCD = "LCD"
ONE_DIMENSIONAL = "one-dimensional"


class CodeTooLargeError(ValueError):
    """Full enumeration was requested for a code with too many codewords."""


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Code spanned by the rows of ``G`` (assumed linearly independent)."""

    field: FieldDescriptor
    G: MatrixGF

    @classmethod
    def systematic(cls, P: MatrixGF) -> LinearCode:
        k = P.shape[0]
        return cls(P.field, MatrixGF.identity(P.field, k).hstack(P))

    @classmethod
    def from_rows(cls, field: FieldDescriptor, rows) -> LinearCode:
        return cls(field, MatrixGF.from_rows(field, rows))

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @property
    def is_systematic(self) -> bool:
        k = self.k
        return k <= self.n and np.array_equal(self.G.data[:, :k], np.eye(k, dtype=self.G.data.dtype))

    @property
    def P(self) -> MatrixGF:
        if not self.is_systematic:
            raise ValueError("generator is not of the form [I | P]")
        return MatrixGF(self.field, self.G.data[:, self.k :].copy())

    def encode(self, message) -> list[int]:
        return self.G.vector_mul(message)

    def contains(self, word) -> bool:
        stacked = MatrixGF(self.field, np.vstack([self.G.data, np.array([list(word)])]))
        return stacked.rank() == self.G.rank()

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n, "k": self.k, "G": self.G.rows()}


def gram(code: LinearCode) -> MatrixGF:
    """G G^T; for G = [I | P] this is I + P P^T."""
    return code.G @ code.G.T


def classify(dimension: int) -> str:
    if dimension == 0:
        return LCD
    if dimension == 1:
        return ONE_DIMENSIONAL
    return f"other({dimension})"


@dataclass
class HullReport:
    dimension: int
    basis: MatrixGF
    classification: str

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "basis": self.basis.rows(),
            "classification": self.classification,
        }


def hull(code: LinearCode) -> HullReport:
    """C intersected with its dual.

    A codeword mG lies in the dual exactly when m G G^T = 0, so the hull is the
    image of the left nullspace of the Gram matrix. The basis is returned in
    reduced row echelon form.
    """
    ms = gram(code).left_nullspace()
    dim = ms.shape[0]
    if dim == 0:
        basis = MatrixGF.zeros(code.field, 0, code.n)
    else:
        basis = (ms @ code.G).rref()[0]
    return HullReport(dim, basis, classify(dim))


def hull_dimension(code: LinearCode) -> int:
    return code.k - gram(code).rank()


def dual(code: LinearCode) -> LinearCode:
    """Generator of the dual: [-P^T | I] for systematic codes, a nullspace basis otherwise."""
    F = code.field
    if code.is_systematic:
        P = code.P
        return LinearCode(F, (-P.T).hstack(MatrixGF.identity(F, code.n - code.k)))
    return LinearCode(F, code.G.nullspace())


def _span_table(code: LinearCode, rows: np.ndarray) -> np.ndarray:
    """Every linear combination of ``rows``, one codeword per row, in message order."""
    ops = ops_for(code.field)
    q = code.field.order
    table = np.zeros((1, code.n), dtype=np.int64)
    for row in rows[::-1]:
        scaled = np.stack([ops.scale(c, row) for c in range(q)])  # (q, n)
        table = ops.add_t[scaled[:, None, :], table[None, :, :]].reshape(-1, code.n)
    return table


def weight_distribution(code: LinearCode, limit: int = 1 << 24) -> dict[int, int]:
    """Histogram of codeword weights by full enumeration (q^k <= ``limit``)."""
    F = code.field
    total = F.order**code.k
    if total > limit:
        raise CodeTooLargeError(f"q^k = {total} exceeds the enumeration limit {limit}")
    if not F.has_dense_tables:
        raise CodeTooLargeError(f"{F!r} is too large for table-driven enumeration")
    ops = ops_for(F)
    data = code.G.data.astype(np.int64)
    k1 = code.k // 2
    A = _span_table(code, data[:k1])
    B = _span_table(code, data[k1:])
    hist = np.zeros(code.n + 1, dtype=np.int64)
    chunk = max(1, (1 << 21) // max(1, B.shape[0] * code.n))
    for start in range(0, A.shape[0], chunk):
        block = ops.add_t[A[start : start + chunk, None, :], B[None, :, :]]
        hist += np.bincount(np.count_nonzero(block, axis=2).ravel(), minlength=code.n + 1)
    return {w: int(c) for w, c in enumerate(hist) if c}


def min_weight_by_enumeration(code: LinearCode, limit: int = 1 << 24) -> int:
    dist = weight_distribution(code, limit)
    return min(w for w in dist if w > 0)
