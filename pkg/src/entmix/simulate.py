"""Seeded Monte Carlo oracle for the bulk-delivery scenario.

Each trial ships one prepared pair to a focal customer pair.  Under the
``bernoulli`` model the pair arrives intact with probability s; under the
``permutation`` model the A-side shipments of n customer pairs are permuted
uniformly at random and the focal pair is intact iff its own index is a fixed
point (probability exactly 1/n).  Intact trials are measured on the prepared
pure state; broken trials draw the two sides independently from the state's
marginals.  Reported frequencies are held against the probabilities the
mixing map predicts.

Randomness comes from numpy's counter-based Philox generator; setting k of
the nine Pauli-pair settings uses the substream ``Philox(key=seed).jumped(k)``,
so runs are bit-reproducible and independent of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix
from .mixing import apply_map
from .states import psi_a

RNG_ALGORITHM = "numpy-philox4x64, per-setting jumped substreams"
SETTINGS = tuple(x + y for x in "xyz" for y in "xyz")
OUTCOME_LABELS = ("++", "+-", "-+", "--")
SIGMA_THRESHOLD = 4.0  # per-cell acceptance in binomial standard errors

# Eigenvector columns (+1 first) of each Pauli operator.
_EIGVECS = {
    "x": np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0),
    "y": np.array([[1, 1], [1j, -1j]], dtype=np.complex128) / np.sqrt(2.0),
    "z": np.array([[1, 0], [0, 1]], dtype=np.complex128),
}

_PERM_CHUNK = 1 << 17  # rows per block when sampling permutations


@dataclass(frozen=True)
class DeliveryModel:
    """Generative model of the delivery process.

    kind 'bernoulli' needs a per-pair success probability ``s``; kind
    'permutation' needs the number of customer pairs ``n`` (>= 2), which
    induces an effective success probability of 1/n.
    """

    kind: str
    s: float | None = None
    n: int | None = None

    def __post_init__(self):
        if self.kind == "bernoulli":
            if self.s is None or not (np.isfinite(self.s) and 0.0 <= self.s <= 1.0):
                raise ValueError(f"bernoulli model needs s in [0, 1], got {self.s}")
        elif self.kind == "permutation":
            if self.n is None or not isinstance(self.n, (int, np.integer)) or self.n < 2:
                raise ValueError(f"permutation model needs integer n >= 2, got {self.n}")
        else:
            raise ValueError(f"model kind must be 'bernoulli' or 'permutation', got {self.kind!r}")

    @property
    def effective_s(self) -> float:
        if self.kind == "bernoulli":
            return float(self.s)
        return 1.0 / float(self.n)


def permutation_effective_s(n: int) -> float:
    """Fixed-point probability of a uniform permutation of n shipments: exactly 1/n."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    return 1.0 / float(n)


@dataclass(frozen=True, eq=False)
class SimReport:
    """Observed vs predicted outcome statistics for all nine Pauli-pair settings.

    ``freq``, ``pred`` and ``sigma`` are (9, 4) arrays over (setting, outcome);
    sigma is |freq - pred| in binomial standard errors (0 where a deterministic
    prediction is met, inf where it is missed).
    """

    model_kind: str
    effective_s: float
    a: float
    trials: int
    seed: int
    rng_algorithm: str
    basis_settings: tuple[str, ...]
    outcome_labels: tuple[str, ...]
    freq: np.ndarray
    pred: np.ndarray
    sigma: np.ndarray
    max_sigma: float

    def to_dict(self) -> dict:
        return {
            "model": self.model_kind,
            "effective_s": self.effective_s,
            "a": self.a,
            "trials": self.trials,
            "seed": self.seed,
            "rng_algorithm": self.rng_algorithm,
            "basis_settings": list(self.basis_settings),
            "outcome_labels": list(self.outcome_labels),
            "freq": self.freq.tolist(),
            "pred": self.pred.tolist(),
            "sigma": self.sigma.tolist(),
            "max_sigma": self.max_sigma,
        }


def joint_probabilities(rho, setting: str) -> np.ndarray:
    """Outcome probabilities (++, +-, -+, --) of measuring Pauli axes on both sides."""
    m = as_matrix(rho, dims=(4,))
    va = _EIGVECS[setting[0]]
    vb = _EIGVECS[setting[1]]
    p = np.empty(4)
    for i in range(2):
        for j in range(2):
            ket = np.kron(va[:, i], vb[:, j])
            p[2 * i + j] = max(float(np.vdot(ket, m @ ket).real), 0.0)
    return p


def marginal_probabilities(rho2, axis: str) -> np.ndarray:
    """(+ , -) outcome probabilities of one Pauli axis on a single-qubit state."""
    m = as_matrix(rho2, dims=(2,))
    v = _EIGVECS[axis]
    return np.array(
        [max(float(np.vdot(v[:, i], m @ v[:, i]).real), 0.0) for i in range(2)]
    )


def _intact_flags(model: DeliveryModel, trials: int, rng: np.random.Generator) -> np.ndarray:
    if model.kind == "bernoulli":
        return rng.random(trials) < model.s
    n = int(model.n)
    flags = np.empty(trials, dtype=bool)
    base = np.arange(n, dtype=np.int64)
    done = 0
    while done < trials:
        block = min(_PERM_CHUNK, trials - done)
        perms = rng.permuted(np.broadcast_to(base, (block, n)).copy(), axis=1)
        flags[done : done + block] = perms[:, 0] == 0
        done += block
    return flags


def simulate_pair_state(model: DeliveryModel, a: float, trials: int, seed: int) -> SimReport:
    """Run the delivery simulation and compare against the mixing-map prediction.

    Every setting gets its own ``trials`` deliveries on an independent
    substream of ``seed``.  Intact trials sample the joint distribution of the
    prepared pure state; broken trials sample the two marginals independently.

    Parameters
    ----------
    model : DeliveryModel
    a : float
        Preparation amplitude of the shipped pure state.
    trials : int
        Deliveries per measurement setting, >= 1.
    seed : int
        Philox key; runs with equal arguments are bit-identical.
    """
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {seed!r}")

    rho_pure = psi_a(a)
    a2 = a * a
    marg = np.diag([a2, 1.0 - a2]).astype(np.complex128)
    s_eff = model.effective_s
    rho_pred = apply_map(rho_pure, s_eff)

    freq = np.empty((9, 4))
    pred = np.empty((9, 4))
    for k, setting in enumerate(SETTINGS):
        pred[k] = joint_probabilities(rho_pred, setting)
        p_joint = joint_probabilities(rho_pure, setting)
        pa = marginal_probabilities(marg, setting[0])
        pb = marginal_probabilities(marg, setting[1])

        rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
        intact = _intact_flags(model, trials, rng)
        u1 = rng.random(trials)
        u2 = rng.random(trials)
        out_joint = np.searchsorted(np.cumsum(p_joint)[:3], u1, side="right")
        out_broken = 2 * (u1 >= pa[0]).astype(np.int64) + (u2 >= pb[0]).astype(np.int64)
        outcome = np.where(intact, out_joint, out_broken)
        freq[k] = np.bincount(outcome, minlength=4) / trials

    se = np.sqrt(pred * (1.0 - pred) / trials)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = np.abs(freq - pred) / se
    sigma = np.where(se > 0.0, sigma, np.where(freq == pred, 0.0, np.inf))
    return SimReport(
        model_kind=model.kind,
        effective_s=s_eff,
        a=float(a),
        trials=int(trials),
        seed=int(seed),
        rng_algorithm=RNG_ALGORITHM,
        basis_settings=SETTINGS,
        outcome_labels=OUTCOME_LABELS,
        freq=freq,
        pred=pred,
        sigma=sigma,
        max_sigma=float(np.max(sigma)),
    )


def estimate_concurrence(report: SimReport) -> tuple[float, float]:
    """Reconstruct the concurrence of the delivered state from the frequencies.

    The zz frequencies estimate the diagonal; the xx and yy correlators
    estimate the corner coherence.  Returns (estimate, standard error), the
    error combining the binomial uncertainties of the ingredients.  The
    estimate is unclamped: a significantly negative value is evidence the
    delivered state is separable, and its positive part estimates the
    delivered concurrence.
    """
    n = report.trials
    idx = {s: i for i, s in enumerate(report.basis_settings)}
    sign = np.array([1.0, -1.0, -1.0, 1.0])
    d = report.freq[idx["zz"]]
    exx = float(report.freq[idx["xx"]] @ sign)
    eyy = float(report.freq[idx["yy"]] @ sign)
    t_est = (exx - eyy) / 4.0
    d2, d3 = max(d[1], 0.0), max(d[2], 0.0)
    c_est = 2.0 * (t_est - np.sqrt(d2 * d3))

    var_t = ((1.0 - exx**2) + (1.0 - eyy**2)) / (16.0 * n)
    if d2 > 0.0 and d3 > 0.0:
        var_geo = (d3 / d2) * d[1] * (1 - d[1]) / (4 * n) + (d2 / d3) * d[2] * (1 - d[2]) / (4 * n)
    else:
        var_geo = (d[1] * (1 - d[1]) + d[2] * (1 - d[2])) / (4 * n)
    se = 2.0 * np.sqrt(var_t + var_geo)
    return float(c_est), float(se)
