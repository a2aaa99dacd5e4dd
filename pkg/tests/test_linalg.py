import numpy as np
import pytest
import scipy.linalg as la
import scipy.sparse as sp
from numpy.testing import assert_allclose, assert_array_equal

from src.linalg import (
    DiagonalMatrix,
    build_csr,
    check_dense_cap,
    dense_eigenvalues,
    export_matrix_market,
    import_matrix_market,
    spmv,
    sym_generalized_eig_extremes,
)
from src.utils.errors import (
    DenseCapExceededError,
    DimensionMismatchError,
    PositivityError,
    SymmetryError,
)


def test_build_csr_sums_duplicates():
    matrix = build_csr(np.array([0, 0, 1, 1]), np.array([1, 1, 0, 1]), np.array([1.0, 2.0, 4.0, 5.0]), (2, 2))
    assert matrix.has_sorted_indices
    assert matrix.nnz == 3
    assert_array_equal(matrix.toarray(), [[0.0, 3.0], [4.0, 5.0]])


def test_spmv_small_example():
    matrix = sp.csr_matrix(np.array([[2.0, 1.0], [0.0, 3.0]]))
    assert_allclose(spmv(matrix, np.ones(2)), [3.0, 3.0])


def test_spmv_checks_dimensions():
    matrix = sp.identity(3, format="csr")
    assert_allclose(spmv(matrix, np.arange(3.0)), np.arange(3.0))
    with pytest.raises(DimensionMismatchError):
        spmv(matrix, np.ones(4))


def test_diagonal_matrix_operations():
    D = DiagonalMatrix(np.array([1.0, 2.0, 4.0]))
    x = np.array([1.0, 1.0, 1.0])
    assert D.shape == (3, 3)
    assert_allclose(D @ x, [1.0, 2.0, 4.0])
    assert_allclose(D.solve(x), [1.0, 0.5, 0.25])
    assert_allclose(D.inverse().diag, [1.0, 0.5, 0.25])
    assert_allclose(D @ np.ones((3, 2)), [[1, 1], [2, 2], [4, 4]])
    assert_allclose((D @ sp.identity(3, format="csr")).toarray(), np.diag([1.0, 2.0, 4.0]))
    assert_allclose(D.tocsr().toarray(), D.toarray())


def test_diagonal_matrix_rejects_nonpositive_entries():
    with pytest.raises(PositivityError):
        DiagonalMatrix(np.array([1.0, 0.0]))
    with pytest.raises(PositivityError):
        DiagonalMatrix(np.array([1.0, np.nan]))


def test_diagonal_matrix_is_read_only():
    D = DiagonalMatrix(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        D.diag[0] = 3.0


def test_dense_eigenvalues_of_triangular_matrix():
    T = np.array([[2.0, 1.0, 0.0], [0.0, -1.0, 3.0], [0.0, 0.0, 0.5]])
    assert_allclose(np.sort(dense_eigenvalues(T).real), [-1.0, 0.5, 2.0])


def test_dense_eigenvalues_complex_pair():
    rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
    values = dense_eigenvalues(rotation)
    assert_allclose(np.sort(values.imag), [-1.0, 1.0])
    assert_allclose(values.real, 0.0, atol=1e-14)


def assert_same_spectrum(first: np.ndarray, second: np.ndarray, tol: float):
    assert len(first) == len(second)
    for value in first:
        assert np.abs(second - value).min() < tol


def test_dense_eigenvalues_of_transpose_and_trace():
    matrix = np.random.default_rng(3).standard_normal((8, 8))
    values = dense_eigenvalues(matrix)
    assert_same_spectrum(values, dense_eigenvalues(matrix.T), 1e-10)
    assert_allclose(values.sum().real, np.trace(matrix), atol=1e-10)
    assert abs(values.sum().imag) < 1e-10


def test_dense_eigenvalues_recover_polynomial_roots():
    roots = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    companion = la.companion(np.poly(roots))
    values = dense_eigenvalues(companion)
    assert_allclose(np.sort(values.real), roots, rtol=1e-8)
    assert np.abs(values.imag).max() < 1e-8


def test_dense_eigenvalues_rejects_non_square():
    with pytest.raises(ValueError):
        dense_eigenvalues(np.ones((2, 3)))


def test_dense_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LUMO_DENSE_CAP", "5")
    check_dense_cap(5)
    with pytest.raises(DenseCapExceededError):
        check_dense_cap(6)
    with pytest.raises(DenseCapExceededError):
        dense_eigenvalues(np.eye(6))


def test_sym_generalized_eig_extremes():
    S = np.diag([2.0, 6.0])
    assert_allclose(sym_generalized_eig_extremes(S, np.array([1.0, 2.0])), (2.0, 3.0))
    assert_allclose(sym_generalized_eig_extremes(S, DiagonalMatrix(np.array([1.0, 2.0]))), (2.0, 3.0))


def test_sym_generalized_eig_extremes_validates_inputs():
    with pytest.raises(SymmetryError):
        sym_generalized_eig_extremes(np.array([[1.0, 2.0], [0.0, 1.0]]), np.ones(2))
    with pytest.raises(PositivityError):
        sym_generalized_eig_extremes(np.eye(2), np.array([1.0, -1.0]))


def test_matrix_market_export_and_import(tmp_path):
    matrix = sp.csr_matrix(np.array([[4.0, -1.0, 0.0], [-1.0, 4.0, -1.0], [0.0, -1.0, 4.0]]))
    path = export_matrix_market(matrix, tmp_path / "stiffness", comment="test matrix")
    assert path.suffix == ".mtx"
    assert path.exists()
    assert_allclose(import_matrix_market(path).toarray(), matrix.toarray())
