"""
Linear Algebra Package
Sparse and diagonal matrix helpers, dense eigen-solves for verification-scale
problems, and Matrix Market import/export.
"""

from .sparse_ops import DiagonalMatrix, build_csr, spmv
from .dense_eigen import check_dense_cap, dense_eigenvalues, sym_generalized_eig_extremes
from .matrix_market import export_matrix_market, import_matrix_market

__all__ = [
    "DiagonalMatrix",
    "build_csr",
    "spmv",
    "check_dense_cap",
    "dense_eigenvalues",
    "sym_generalized_eig_extremes",
    "export_matrix_market",
    "import_matrix_market",
]
