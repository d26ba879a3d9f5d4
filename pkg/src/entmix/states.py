"""Constructors and validation for the two-qubit states of the delivery model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import HERM_TOL, PSD_TOL, as_matrix

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class PrepParams:
    """Preparation amplitude ``a`` and delivery success probability ``s``.

    ``a`` parametrizes the prepared pure state a|00> + sqrt(1-a^2)|11>;
    ``s`` is the probability that a customer pair receives its intended,
    still-correlated qubits.  Both live in [0, 1].
    """

    a: float
    s: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and 0.0 <= self.a <= 1.0):
            raise ValueError(f"amplitude a must be in [0, 1], got {self.a}")
        if not (np.isfinite(self.s) and 0.0 <= self.s <= 1.0):
            raise ValueError(f"success probability s must be in [0, 1], got {self.s}")


class StateValidationError(ValueError):
    """A candidate density matrix violated one or more state invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(f"{name}: {magnitude:.3e}" for name, magnitude in self.violations)
        super().__init__(f"invalid density matrix ({detail})")


def psi_a(a: float) -> np.ndarray:
    """Projector onto the pure state a|00> + sqrt(1-a^2)|11>."""
    if not (np.isfinite(a) and 0.0 <= a <= 1.0):
        raise ValueError(f"amplitude a must be in [0, 1], got {a}")
    ket = np.zeros(4, dtype=np.complex128)
    ket[0] = a
    ket[3] = np.sqrt(1.0 - a * a)
    return np.outer(ket, ket.conj())


def bell_state() -> np.ndarray:
    """Projector onto (|00> + |11>)/sqrt(2), the a = 1/sqrt(2) case."""
    return psi_a(1.0 / np.sqrt(2.0))


def barrett_state() -> np.ndarray:
    """(5/12) Bell projector + (7/12) I/4.

    A full-rank Werner state admitting a local hidden-variable model for all
    non-sequential POVMs; diagonal (17, 7, 7, 17)/48 with corner coherences 5/24.
    """
    return (5.0 / 12.0) * bell_state() + (7.0 / 12.0) * np.eye(4, dtype=np.complex128) / 4.0


def pauli(axis: str) -> np.ndarray:
    """Standard Pauli matrix for axis 'x', 'y' or 'z'."""
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None


def validate(rho) -> np.ndarray:
    """Check the density-matrix invariants and return the state as an array.

    Requires Hermiticity within HERM_TOL, unit trace within 1e-9 and all
    eigenvalues >= -PSD_TOL.  Raises StateValidationError naming every failed
    check together with the violation magnitude.
    """
    m = as_matrix(rho, dims=(4,))
    violations = []
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > HERM_TOL:
        violations.append(("hermiticity", herm_dev))
    trace_dev = abs(complex(np.trace(m)) - 1.0)
    if trace_dev > 1e-9:
        violations.append(("trace", trace_dev))
    if not violations:
        w = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if w[0] < -PSD_TOL:
            violations.append(("psd", float(w[0])))
    if violations:
        raise StateValidationError(violations)
    return m
