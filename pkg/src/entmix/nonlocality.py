"""CHSH violation via the two-largest-eigenvalue criterion, and a local
hidden-variable witness built from a Werner-state decomposition.

Boundary conventions, fixed so that region maps reproduce bit-for-bit:
violation is strict (M > 1); witness feasibility is non-strict in the
candidate diagonal entries (>= 0 up to 1e-12 round-off) and strict in the
mixing weight (0 < c < 1, with |c - 1| <= 1e-12 flagged as degenerate).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entanglement import concurrence_raw, ef_from_concurrence
from .mixing import apply_map, mapped_xstate, xstate_fields
from .states import PrepParams, pauli, psi_a, validate

_AXES = ("x", "y", "z")
_SIGMA = tuple(pauli(ax) for ax in _AXES)

# Diagonal of the Werner state (5/12) Bell + (7/12) I/4 used by the witness.
WITNESS_DIAG = (17.0 / 48.0, 7.0 / 48.0, 7.0 / 48.0, 17.0 / 48.0)
WITNESS_CORNER = 5.0 / 24.0

SEP_TOL = 1e-12          # round-off slack on the non-negativity constraints
DEGENERATE_TOL = 1e-12   # |c - 1| below this is flagged boundary-degenerate


def correlation_matrix(rho) -> np.ndarray:
    """3x3 matrix of Pauli-pair expectations T[i, j] = Tr[rho (sigma_i x sigma_j)]."""
    m = validate(rho)
    t = np.empty((3, 3))
    for i, si in enumerate(_SIGMA):
        for j, sj in enumerate(_SIGMA):
            t[i, j] = float(np.trace(m @ np.kron(si, sj)).real)
    return t


def horodecki_m(rho) -> float:
    """Sum of the two largest eigenvalues of T^T T.

    The maximal CHSH value of the state is 2 sqrt(M); the inequality can be
    violated iff M > 1.
    """
    t = correlation_matrix(rho)
    w = np.linalg.eigvalsh(t.T @ t)
    return float(w[-1] + w[-2])


def chsh_value(rho) -> float:
    """Largest CHSH expectation reachable with optimal measurement settings."""
    return 2.0 * np.sqrt(horodecki_m(rho))


def chsh_boundary(a: float) -> float:
    """Success probability above which the mapped prepared state violates CHSH.

    Closed form in u = a^2 (1 - a^2): s* = (4u - 1 + sqrt(3 - 4u)) / (1 + 4u);
    equals 1/sqrt(2) at a = 1/sqrt(2) and rises towards sqrt(3) - 1 as a -> 0.
    """
    if not (np.isfinite(a) and 0.0 < a < 1.0):
        raise ValueError(f"CHSH boundary defined for 0 < a < 1, got {a}")
    u = a * a * (1.0 - a * a)
    return ((4.0 * u - 1.0) + np.sqrt(3.0 - 4.0 * u)) / (1.0 + 4.0 * u)


def chsh_boundary_bisect(a: float, tol: float = 1e-12) -> float:
    """CHSH boundary located by bisection on the full matrix criterion (cross-check)."""
    if not (np.isfinite(a) and 0.0 < a < 1.0):
        raise ValueError(f"CHSH boundary defined for 0 < a < 1, got {a}")
    rho = psi_a(a)
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if horodecki_m(apply_map(rho, mid)) > 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class LhvtWitness:
    """Outcome of decomposing a mapped state as c * (Werner witness) + (1-c) * diagonal.

    When the decomposition succeeds the state inherits a local hidden-variable
    model for all non-sequential POVMs.  ``violated_constraints`` lists which
    of the requirements failed: 'c_range' for the mixing weight, 'd{i}_nonneg'
    for a negative candidate diagonal entry.
    """

    c: float
    sep_diag: tuple[float, float, float, float]
    feasible: bool
    violated_constraints: tuple[str, ...]
    boundary_degenerate: bool = False


def lhvt_decompose(p: PrepParams) -> LhvtWitness:
    """Match the corner coherence to fix c, then check the leftover diagonal.

    The mapped state has a single coherence t; the witness state's is 5/24, so
    c = (24/5) t is the only weight that leaves a diagonal remainder.  The
    remainder (d - c b) / (1 - c) must be entrywise non-negative.
    """
    x = mapped_xstate(p)
    c = x.t / WITNESS_CORNER
    b = WITNESS_DIAG
    if abs(c - 1.0) <= DEGENERATE_TOL:
        return LhvtWitness(
            c=float(c),
            sep_diag=(np.nan,) * 4,
            feasible=False,
            violated_constraints=("c_range",),
            boundary_degenerate=True,
        )
    sep = tuple(float((x.d[i] - c * b[i]) / (1.0 - c)) for i in range(4))
    violated = []
    if not 0.0 < c < 1.0:
        violated.append("c_range")
    for i, v in enumerate(sep):
        if v < -SEP_TOL:
            violated.append(f"d{i + 1}_nonneg")
    return LhvtWitness(
        c=float(c),
        sep_diag=sep,
        feasible=not violated,
        violated_constraints=tuple(violated),
    )


def lhvt_region(p: PrepParams) -> bool:
    """True where the witness decomposition exists and entanglement survives."""
    if concurrence_raw(p.a, p.s) <= 0.0:
        return False
    return lhvt_decompose(p).feasible


@dataclass(frozen=True)
class RegionMap:
    """Per-cell classification of the (a, s) parameter plane.

    Arrays are indexed [i_a, j_s] against the two coordinate vectors.
    """

    a: np.ndarray
    s: np.ndarray
    ef: np.ndarray
    entangled: np.ndarray
    chsh: np.ndarray
    lhvt: np.ndarray


def _scan_rows(a_vals: np.ndarray, s_vals: np.ndarray):
    a = a_vals[:, None]
    s = s_vals[None, :]
    d1, d2, d3, d4, t = xstate_fields(a, s)
    c_raw = 2.0 * (t - np.sqrt(d2 * d3))
    entangled = c_raw > 0.0
    ef = ef_from_concurrence(np.clip(c_raw, 0.0, None))
    tzz = d1 - d2 - d3 + d4
    x = 4.0 * t * t
    m = x + np.maximum(x, tzz * tzz)
    chsh = m > 1.0
    c = t / WITNESS_CORNER
    b = np.asarray(WITNESS_DIAG)
    with np.errstate(divide="ignore", invalid="ignore"):
        denom = 1.0 - c
        feasible = (c > 0.0) & (denom > DEGENERATE_TOL)
        for i, di in enumerate((d1, d2, d3, d4)):
            feasible &= np.where(denom != 0.0, (di - c * b[i]) / denom, -1.0) >= -SEP_TOL
    lhvt = feasible & entangled
    return ef, entangled, chsh, lhvt


def region_scan(a_points: int, s_points: int, workers: int | None = None) -> RegionMap:
    """Classify a uniform interior grid of the (a, s) unit square.

    Rows (fixed a) are computed independently and may be spread over
    ``workers`` threads (default: the ENTMIX_THREADS environment variable,
    else 1); assembly order is fixed by the grid regardless of scheduling.
    """
    if a_points < 2 or s_points < 2:
        raise ValueError(f"grid must be at least 2x2, got {a_points}x{s_points}")
    a_vals = np.linspace(0.0, 1.0, a_points + 2)[1:-1]
    s_vals = np.linspace(0.0, 1.0, s_points + 2)[1:-1]
    if workers is None:
        workers = int(os.environ.get("ENTMIX_THREADS", "1"))
    workers = max(1, workers)
    if workers == 1:
        ef, entangled, chsh, lhvt = _scan_rows(a_vals, s_vals)
    else:
        chunks = np.array_split(np.arange(a_vals.size), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda idx: _scan_rows(a_vals[idx], s_vals), chunks))
        ef = np.vstack([p[0] for p in parts])
        entangled = np.vstack([p[1] for p in parts])
        chsh = np.vstack([p[2] for p in parts])
        lhvt = np.vstack([p[3] for p in parts])
    return RegionMap(a=a_vals, s=s_vals, ef=ef, entangled=entangled, chsh=chsh, lhvt=lhvt)
