"""Instrumented symmetric positive definite operators.

An :class:`SpdOperator` wraps the weight matrix ``A`` behind ``apply`` /
``apply_block`` and counts every single-vector product in ``mv_count``.
That counter is the cost unit the factorizations report: one increment per
applied column, no exceptions.

Operators are cheap to share read-only, but the counter is a plain attribute;
confine an operator to one thread per factorization.
"""

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .exceptions import DimensionError


@dataclass
class CostReport:
    """Cost of one factorization: measured MV count plus a model flop count."""

    mv_count: int
    flops: int


def as_matrix(a):
    """Coerce to the library's matrix carrier: float64, Fortran-ordered, 2-D."""
    m = np.asfortranarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def _as_vector(x, dim):
    v = np.ascontiguousarray(x, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != dim:
        raise DimensionError(f"expected a vector of length {dim}, got shape {np.shape(x)}")
    return v


class SpdOperator:
    """Base class; concrete realizations implement ``_apply_into``."""

    def __init__(self, dim):
        self.dim = int(dim)
        self.mv_count = 0

    def apply(self, x):
        """Return A @ x and increment the counter by one."""
        x = _as_vector(x, self.dim)
        y = np.empty(self.dim)
        self._apply_into(x, y)
        self.mv_count += 1
        return y

    def apply_block(self, X):
        """Apply column by column: bitwise equal to ``dim`` single applies, counter +k."""
        X = as_matrix(X)
        if X.shape[0] != self.dim:
            raise DimensionError(f"block has {X.shape[0]} rows, operator dimension is {self.dim}")
        Y = np.empty_like(X)
        self._apply_block_into(X, Y)
        self.mv_count += X.shape[1]
        return Y

    def _apply_block_into(self, X, Y):
        for c in range(X.shape[1]):
            self._apply_into(X[:, c].copy(), Y[:, c])

    def _apply_into(self, x, y):
        raise NotImplementedError


class DenseSpdOperator(SpdOperator):
    """Dense realization; stores A as an m-by-m Fortran-ordered array."""

    def __init__(self, matrix):
        A = as_matrix(matrix)
        if A.shape[0] != A.shape[1]:
            raise DimensionError(f"operator matrix must be square, got {A.shape}")
        super().__init__(A.shape[0])
        self.matrix = A

    def _apply_into(self, x, y):
        kernels().matvec(self.matrix, x, y)

    def _apply_block_into(self, X, Y):
        kernels().apply_block_dense(self.matrix, X, Y)

    def to_dense(self):
        return self.matrix


class CsrSpdOperator(SpdOperator):
    """Compressed sparse row realization."""

    def __init__(self, indptr, indices, data, dim=None):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        data = np.ascontiguousarray(data, dtype=np.float64)
        m = indptr.shape[0] - 1
        if dim is not None and dim != m:
            raise DimensionError(f"indptr implies dimension {m}, got dim={dim}")
        if indptr[0] != 0 or indptr[-1] != data.shape[0] or indices.shape[0] != data.shape[0]:
            raise DimensionError("inconsistent CSR arrays")
        if np.any(np.diff(indptr) < 0):
            raise DimensionError("indptr must be non-decreasing")
        if data.shape[0] and (indices.min() < 0 or indices.max() >= m):
            raise DimensionError("column index out of range")
        super().__init__(m)
        self.indptr = indptr
        self.indices = indices
        self.data = data

    @property
    def nnz(self):
        return int(self.data.shape[0])

    def _apply_into(self, x, y):
        kernels().csr_matvec(self.indptr, self.indices, self.data, x, y)

    def to_dense(self):
        A = np.zeros((self.dim, self.dim), order="F")
        for i in range(self.dim):
            for k in range(self.indptr[i], self.indptr[i + 1]):
                A[i, self.indices[k]] += self.data[k]
        return A


def csr_from_coo(dim, rows, cols, values):
    """Build a CSR operator from coordinate triplets; duplicates are summed."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    order = np.lexsort((cols, rows))
    rows, cols, values = rows[order], cols[order], values[order]
    if rows.shape[0]:
        dup = np.zeros(rows.shape[0], dtype=bool)
        dup[1:] = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
        if dup.any():
            keep = ~dup
            group = np.cumsum(keep) - 1
            summed = np.zeros(int(keep.sum()))
            np.add.at(summed, group, values)
            rows, cols, values = rows[keep], cols[keep], summed
    indptr = np.zeros(dim + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    indptr = np.cumsum(indptr)
    return CsrSpdOperator(indptr, cols, values)


def identity_operator(m):
    """Dense identity operator (applies still count as MVs)."""
    return DenseSpdOperator(np.eye(m))


def diagonal_operator(d):
    """Dense operator with the given diagonal."""
    d = np.asarray(d, dtype=np.float64)
    return DenseSpdOperator(np.diag(d))


def as_operator(obj):
    """Accept an existing operator or a square dense array."""
    if isinstance(obj, SpdOperator):
        return obj
    return DenseSpdOperator(obj)
