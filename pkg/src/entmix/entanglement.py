"""Concurrence, entanglement of formation, survival thresholds and the optimal
preparation problem for states delivered through the mixing map.

Two routes to the concurrence are kept deliberately separate: the general
spin-flip construction working on an arbitrary 4x4 state, and the one-line
closed form valid for the mapped prepared states.  Tests hold them against
each other over the whole parameter plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import PSD_CLAMP, eig_hermitian, mat_sqrt_psd, tensor
from .mixing import xstate_fields
from .states import PrepParams, pauli, validate

_YY = tensor(pauli("y"), pauli("y"))


@dataclass(frozen=True)
class WoottersSpectrum:
    """Square roots of the spin-flip eigenvalues, sorted descending."""

    lambdas: tuple[float, float, float, float]


@dataclass(frozen=True)
class OptimalPrep:
    """Best preparation amplitude for a given success probability.

    ``a_star`` is None for the degenerate s = 0 case, where no preparation
    yields any entanglement and the argmax is undefined.
    """

    s: float
    a_star: float | None
    c_max: float
    ef_max: float


def spin_flip(rho) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    m = validate(rho)
    return _YY @ m.conj() @ _YY


def wootters_spectrum(rho) -> WoottersSpectrum:
    """Spectrum of sqrt(rho . rho~) via the Hermitian product sqrt(rho) rho~ sqrt(rho)."""
    m = validate(rho)
    root = mat_sqrt_psd(m)
    prod = root @ spin_flip(m) @ root
    w = eig_hermitian((prod + prod.conj().T) / 2).eigenvalues
    if w[-1] < -PSD_CLAMP:
        w = np.maximum(w, 0.0)
    lam = np.sqrt(np.clip(w, 0.0, None))
    return WoottersSpectrum(lambdas=tuple(float(x) for x in lam))


def concurrence_general(rho) -> float:
    """Concurrence of an arbitrary two-qubit state: max(0, l1 - l2 - l3 - l4)."""
    lam = wootters_spectrum(rho).lambdas
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def concurrence_raw(a, s):
    """Unclamped closed-form concurrence of the mapped prepared state; broadcasts.

    Negative values mean the state is separable; they are kept unclamped here
    because root finders and optimizers need the sign.
    """
    d1, d2, d3, d4, t = xstate_fields(a, s)
    return 2.0 * (t - np.sqrt(d2 * d3))


def concurrence_xstate(p: PrepParams) -> float:
    """Closed-form concurrence of the mapped prepared state, clamped at zero."""
    return max(0.0, float(concurrence_raw(p.a, p.s)))


def survival_threshold(a: float) -> float:
    """Smallest success probability above which the mapped state stays entangled.

    With w = a sqrt(1 - a^2), the concurrence is positive iff s > w / (1 + w).
    Undefined at a = 0 or 1 where the prepared state is never entangled.
    """
    if not (np.isfinite(a) and 0.0 < a < 1.0):
        raise ValueError(f"survival threshold undefined for a = {a}: state never entangled")
    w = a * math.sqrt(1.0 - a * a)
    return w / (1.0 + w)


def survival_threshold_bisect(a: float, tol: float = 1e-12) -> float:
    """Threshold located by bisection on the unclamped concurrence (cross-check path)."""
    if not (np.isfinite(a) and 0.0 < a < 1.0):
        raise ValueError(f"survival threshold undefined for a = {a}: state never entangled")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if concurrence_raw(a, mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _binary_entropy(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x)
    return np.where((x > 0.0) & (x < 1.0), h, 0.0)


def ef_from_concurrence(c):
    """Entanglement of formation (bits) from concurrence; broadcasts, no validation."""
    c = np.asarray(c, dtype=float)
    x = 0.5 * (1.0 + np.sqrt(np.clip(1.0 - c * c, 0.0, None)))
    return _binary_entropy(x)


def entanglement_of_formation(c: float) -> float:
    """Entanglement of formation in bits for a two-qubit concurrence c in [0, 1]."""
    if not np.isfinite(c) or c < -1e-12 or c > 1.0 + 1e-12:
        raise ValueError(f"concurrence must be in [0, 1], got {c}")
    return float(ef_from_concurrence(min(max(c, 0.0), 1.0)))


def _a_from_w(w: float) -> float:
    # inverse of w = a sqrt(1-a^2) on a in [0, 1/sqrt(2)], cancellation-free
    w = min(max(w, 0.0), 0.5)
    disc = max(1.0 - 4.0 * w * w, 0.0)
    return math.sqrt(2.0 * w * w / (1.0 + math.sqrt(disc)))


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    invphi2 = (3.0 - math.sqrt(5.0)) / 2.0
    h = hi - lo
    c = lo + invphi2 * h
    d = lo + invphi * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            h = hi - lo
            c = lo + invphi2 * h
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            h = hi - lo
            d = lo + invphi * h
            fd = f(d)
    return lo, hi


def _parabolic_vertex(f, center: float, lo: float, hi: float, h: float) -> float | None:
    # one quadratic-interpolation step through three equally spaced samples
    w1 = max(lo, center - h)
    w3 = min(hi, center + h)
    if w3 - w1 < h:
        if w1 <= lo:
            w3 = min(hi, lo + 2.0 * h)
        else:
            w1 = max(lo, hi - 2.0 * h)
    w2 = 0.5 * (w1 + w3)
    g1, g2, g3 = f(w1), f(w2), f(w3)
    den = 2.0 * g2 - g1 - g3
    if not (np.isfinite(den) and den > 0.0):
        return None
    vertex = w2 + 0.25 * (w3 - w1) * (g3 - g1) / den
    if not np.isfinite(vertex):
        return None
    return min(max(vertex, lo), hi)


def optimize_prep(s: float, grid_resolution: int = 4097) -> OptimalPrep:
    """Maximize the delivered concurrence over the preparation amplitude.

    The search runs over w = a sqrt(1 - a^2) in [0, 1/2], a monotone
    reparametrization of a in [0, 1/sqrt(2)] (the symmetric half of the
    domain) in which the objective 2(s w - (1 - s) w^2) is well conditioned
    near its maximum: a coarse grid scan, then golden-section refinement,
    then one quadratic-interpolation polish.  Grid ties resolve to the
    smaller amplitude.
    """
    if not (np.isfinite(s) and 0.0 <= s <= 1.0):
        raise ValueError(f"success probability s must be in [0, 1], got {s}")
    if grid_resolution < 3:
        raise ValueError(f"grid_resolution must be at least 3, got {grid_resolution}")
    if s == 0.0:
        return OptimalPrep(s=0.0, a_star=None, c_max=0.0, ef_max=0.0)

    def objective(w):
        return 2.0 * (s * w - (1.0 - s) * w * w)

    grid = np.linspace(0.0, 0.5, grid_resolution)
    i = int(np.argmax(objective(grid)))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid_resolution - 1)]
    glo, ghi = _golden_max(objective, lo, hi, tol=1e-10)
    w_best = 0.5 * (glo + ghi)
    f_best = objective(w_best)
    polish = _parabolic_vertex(objective, w_best, 0.0, 0.5, h=1.0 / 64.0)
    candidates = [polish] if polish is not None else []
    candidates += [0.5, 0.0]
    for w in candidates:
        fw = objective(w)
        if fw >= f_best:
            w_best, f_best = w, fw
    a_star = _a_from_w(w_best)
    c_max = max(0.0, float(f_best))
    return OptimalPrep(s=s, a_star=a_star, c_max=c_max, ef_max=entanglement_of_formation(c_max))


def ef_max_asymptotic(s: float) -> float:
    """Small-s closed form for the best achievable entanglement of formation.

    (s^4 / 4) [log2(1/s) + 1 + 1/(4 ln 2)]; a leading-order expression, only
    meaningful for s well below 1/2.
    """
    if not (np.isfinite(s) and 0.0 < s <= 1.0):
        raise ValueError(f"success probability s must be in (0, 1], got {s}")
    return s**4 / 4.0 * (math.log2(1.0 / s) + 1.0 + 1.0 / (4.0 * math.log(2.0)))


def eisert_lower_bound(n: int) -> float:
    """n times the optimal E_F at s = 1/n.

    Lower-bounds the entanglement distillable from n shipped pairs when the
    receiving parties can only operate on individual qubits.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    return float(n) * optimize_prep(1.0 / float(n)).ef_max
