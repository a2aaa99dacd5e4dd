"""
Matrix Market I/O
Coordinate-format export and import of assembled matrices for debugging.
"""

from pathlib import Path

import scipy.io
import scipy.sparse as sp


def export_matrix_market(matrix, path: Path, comment: str = "") -> Path:
    """Write a sparse matrix as real general or real symmetric coordinate data."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    matrix = sp.csr_matrix(matrix.tocsr() if hasattr(matrix, "tocsr") else matrix)
    symmetric = (matrix - matrix.T).count_nonzero() == 0
    scipy.io.mmwrite(
        str(path), matrix.tocoo(), comment=comment, field="real",
        symmetry="symmetric" if symmetric else "general",
    )
    # mmwrite appends the extension when it is missing
    return path if path.suffix == ".mtx" else path.with_name(path.name + ".mtx")


def import_matrix_market(path: Path) -> sp.csr_matrix:
    """Read a coordinate Matrix Market file into CSR."""
    return sp.csr_matrix(scipy.io.mmread(str(path)))
