"""The delivery mixing map and its closed-form action on the prepared states.

A state rho delivered with per-pair success probability s is described by the
nonlinear map

    rho  ->  s * rho + (1 - s) * Tr_B[rho] (x) Tr_A[rho],

i.e. with probability 1 - s the two customers hold uncorrelated qubits drawn
from the marginals of the intended state.  The map is a state-to-state
function, not a linear channel, so no Kraus form exists or is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import partial_trace, tensor
from .states import PrepParams, psi_a, validate


@dataclass(frozen=True)
class XState:
    """Image of a prepared pure state under the mixing map, in compact form.

    ``d`` holds the four diagonal entries in the |00>,|01>,|10>,|11> ordering
    and ``t`` the single real coherence between |00> and |11>.  All other
    entries of the full matrix vanish.
    """

    d: tuple[float, float, float, float]
    t: float

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.shape != (4,) or np.any(d < -1e-12):
            raise ValueError(f"diagonal entries must be four non-negative reals, got {self.d}")
        if abs(float(d.sum()) - 1.0) > 1e-12:
            raise ValueError(f"diagonal entries must sum to 1, got {d.sum()!r}")
        if abs(self.t) > np.sqrt(max(d[0] * d[3], 0.0)) + 1e-12:
            raise ValueError(f"coherence |t|={abs(self.t)} exceeds sqrt(d1*d4)={np.sqrt(d[0]*d[3])}")

    def to_matrix(self) -> np.ndarray:
        m = np.diag(np.asarray(self.d, dtype=np.complex128))
        m[0, 3] = m[3, 0] = self.t
        return m


def apply_map(rho, s: float) -> np.ndarray:
    """Mix a two-qubit state with the product of its own marginals, weight 1 - s."""
    if not (np.isfinite(s) and 0.0 <= s <= 1.0):
        raise ValueError(f"success probability s must be in [0, 1], got {s}")
    m = validate(rho)
    product = tensor(partial_trace(m, "A"), partial_trace(m, "B"))
    return s * m + (1.0 - s) * product


def xstate_fields(a, s):
    """Closed-form (d1, d2, d3, d4, t) of the mapped prepared state; broadcasts."""
    a = np.asarray(a, dtype=float)
    s = np.asarray(s, dtype=float)
    a2 = a * a
    b2 = 1.0 - a2
    d1 = s * a2 + (1.0 - s) * a2 * a2
    d2 = (1.0 - s) * a2 * b2
    d4 = s * b2 + (1.0 - s) * b2 * b2
    t = s * a * np.sqrt(b2)
    return d1, d2, d2, d4, t


def mapped_xstate(p: PrepParams) -> XState:
    """Compact form of the mapped state for preparation ``p``.

    Agrees entrywise with apply_map(psi_a(p.a), p.s); the closed form skips
    the 4x4 algebra.
    """
    d1, d2, d3, d4, t = xstate_fields(p.a, p.s)
    return XState(d=(float(d1), float(d2), float(d3), float(d4)), t=float(t))


def fidelity(p: PrepParams) -> float:
    """Overlap of the mapped state with the prepared pure state.

    Equals 1 - 3 a^2 (1 - s) (1 - a^2); worst at a = 1/sqrt(2), so maximally
    entangled preparations degrade fastest.
    """
    a2 = p.a * p.a
    return 1.0 - 3.0 * a2 * (1.0 - p.s) * (1.0 - a2)


def mapped_state(p: PrepParams) -> np.ndarray:
    """Full 4x4 mapped state for preparation ``p`` (general-path evaluation)."""
    return apply_map(psi_a(p.a), p.s)
