"""Dense complex matrix helpers for few-qubit operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The functions
here add the shape checks and Hermitian/unitary certification the rest of
the package relies on.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

#: Absolute max-norm tolerance used to certify Hermitian / unitary matrices.
CERT_TOL = 1e-12


class DimensionError(ValueError):
    """Raised when matrix shapes are incompatible."""


class NotHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not."""

    def __init__(self, asymmetry: float, tol: float):
        super().__init__(
            f"matrix is not Hermitian: max |A - A^dagger| = {asymmetry:.3e} "
            f"exceeds tolerance {tol:.1e}")
        self.asymmetry = asymmetry


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a square complex128 array, raising on bad shapes."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {arr.shape}")
    return arr


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(
            f"dimension mismatch: {a.shape[0]}x{a.shape[1]} vs {b.shape[0]}x{b.shape[1]}")


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def kron(*ops) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost factor first."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, (as_matrix(op) for op in ops))


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def max_norm(a) -> float:
    """Largest absolute entry."""
    return float(np.max(np.abs(a)))


def hermiticity_defect(a) -> float:
    a = as_matrix(a)
    return max_norm(a - a.conj().T)


def unitarity_defect(a) -> float:
    a = as_matrix(a)
    return max_norm(a @ a.conj().T - np.eye(a.shape[0]))


def is_hermitian(a, tol: float = CERT_TOL) -> bool:
    return hermiticity_defect(a) <= tol


def is_unitary(a, tol: float = CERT_TOL) -> bool:
    return unitarity_defect(a) <= tol


def hermitian_eig(a, tol: float = CERT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Args:
        a: Square matrix, Hermitian to within ``tol`` in max-norm.
        tol: Certification tolerance.

    Returns:
        ``(eigenvalues, eigenvectors)`` with real eigenvalues in ascending
        order and eigenvectors as the columns of a unitary matrix, so that
        ``a == V @ diag(w) @ V^dagger``.

    Raises:
        NotHermitianError: If the measured asymmetry exceeds ``tol``.
    """
    a = as_matrix(a)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(defect, tol)
    # eigh only reads one triangle; symmetrise so the residual is honest
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return w, v


def expm_i_hermitian(h, t: float, tol: float = CERT_TOL) -> np.ndarray:
    """Return ``exp(i h t)`` for Hermitian ``h`` via its eigendecomposition."""
    w, v = hermitian_eig(h, tol)
    return (v * np.exp(1j * w * t)) @ v.conj().T
