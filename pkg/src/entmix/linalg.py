"""Dense complex linear algebra for the 2x2 / 4x4 matrices used everywhere else.

Basis ordering is fixed once and for all: two-qubit matrices are indexed by
|00>, |01>, |10>, |11> (row-major, first qubit = side A), single-qubit
matrices by |0>, |1>.  Every closed form in the other modules assumes this
ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Shared tolerance constants.
HERM_TOL = 1e-9     # max |m - m^dag| accepted as Hermitian
RECON_TOL = 1e-10   # eigendecomposition reconstruction residual
PSD_CLAMP = 1e-10   # round-off eigenvalues above -PSD_CLAMP are treated as 0
PSD_TOL = 1e-8      # eigenvalues below -PSD_TOL are a genuine PSD violation


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    """Coerce to a square complex array of an allowed dimension, all entries finite."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in dims:
        raise ValueError(f"expected dimension in {dims}, got {a.shape[0]}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def is_hermitian(m, tol: float = HERM_TOL) -> bool:
    """True if max |m[i,j] - conj(m[j,i])| <= tol."""
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T))) <= tol


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two single-qubit (2x2) matrices, A side first."""
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(m, keep: str) -> np.ndarray:
    """Reduce a two-qubit matrix to the marginal of subsystem ``keep`` ('A' or 'B')."""
    a = as_matrix(m, dims=(4,))
    t = a.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Hermitian eigendecomposition, eigenvalues descending, eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(m) -> EigenDecomposition:
    """Full spectrum of a Hermitian matrix, sorted descending.

    Raises ValueError if the input fails the Hermiticity check and
    numpy.linalg.LinAlgError if the eigensolver does not converge.
    """
    a = as_matrix(m)
    dev = float(np.max(np.abs(a - a.conj().T)))
    if dev > HERM_TOL:
        raise ValueError(f"matrix is not Hermitian: max |m - m^dag| = {dev:.3e}")
    w, v = np.linalg.eigh(a)
    return EigenDecomposition(eigenvalues=w[::-1].copy(), eigenvectors=v[:, ::-1].copy())


def mat_sqrt_psd(m) -> np.ndarray:
    """Hermitian PSD square root.

    Eigenvalues in [-PSD_TOL, 0) are treated as round-off and clamped to zero;
    anything more negative raises ValueError.
    """
    dec = eig_hermitian(m)
    w = dec.eigenvalues
    if w[-1] < -PSD_TOL:
        raise ValueError(f"matrix is not PSD: min eigenvalue = {w[-1]:.3e}")
    root = np.sqrt(np.maximum(w, 0.0))
    v = dec.eigenvectors
    s = (v * root) @ v.conj().T
    return (s + s.conj().T) / 2
