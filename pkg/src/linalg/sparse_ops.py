"""
Sparse Operations
Compressed-row matrices built from coordinate triplets, a strictly positive
diagonal matrix type for lumped masses, and a dimension-checked mat-vec.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..utils.errors import DimensionMismatchError, PositivityError

Operator = Union[sp.spmatrix, "DiagonalMatrix"]


def build_csr(rows: np.ndarray, cols: np.ndarray, values: np.ndarray,
              shape: Tuple[int, int]) -> sp.csr_matrix:
    """
    Compress coordinate triplets into CSR, summing duplicates.

    The result has sorted unique column indices in every row.
    """
    matrix = sp.coo_matrix(
        (np.asarray(values, dtype=float), (np.asarray(rows), np.asarray(cols))),
        shape=shape,
    ).tocsr()
    matrix.sum_duplicates()
    matrix.sort_indices()
    return matrix


def spmv(matrix: Operator, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product with a dimension check."""
    x = np.asarray(x)
    n_cols = matrix.shape[1]
    if x.shape[0] != n_cols:
        raise DimensionMismatchError("spmv", n_cols, x.shape[0])
    return matrix @ x


@dataclass(frozen=True, eq=False)
class DiagonalMatrix:
    """Diagonal matrix with strictly positive entries (a lumped mass)."""
    diag: np.ndarray

    def __post_init__(self):
        diag = np.ascontiguousarray(self.diag, dtype=float)
        if diag.ndim != 1:
            raise ValueError("DiagonalMatrix expects a 1-D vector of entries")
        bad = np.flatnonzero(~(diag > 0.0))
        if bad.size:
            raise PositivityError(f"diagonal entry {bad[0]} is {diag[bad[0]]!r}, must be > 0")
        diag.setflags(write=False)
        object.__setattr__(self, "diag", diag)

    @property
    def shape(self) -> Tuple[int, int]:
        n = len(self.diag)
        return (n, n)

    def __matmul__(self, x):
        if sp.issparse(x):
            return sp.diags(self.diag) @ x
        x = np.asarray(x)
        if x.ndim == 1:
            return self.diag * x
        return self.diag[:, None] * x

    def solve(self, x: np.ndarray) -> np.ndarray:
        """Apply the inverse."""
        x = np.asarray(x)
        if x.ndim == 1:
            return x / self.diag
        return x / self.diag[:, None]

    def inverse(self) -> "DiagonalMatrix":
        return DiagonalMatrix(1.0 / self.diag)

    def tocsr(self) -> sp.csr_matrix:
        return sp.diags(self.diag, format="csr")

    def toarray(self) -> np.ndarray:
        return np.diag(self.diag)

    def diagonal(self) -> np.ndarray:
        return self.diag.copy()
