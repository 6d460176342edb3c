"""Seeded Monte Carlo sampling of measurement statistics.

Preparation events are drawn by prior and outcomes by their Born
probabilities, then empirical rates are compared against the analytic
targets with binomial error bars.  Randomness comes from a counter-based
generator (Philox) keyed by the seed: trial i consumes the i-th block of
the counter stream, so reports are bitwise reproducible and independent
of evaluation order.
"""

from dataclasses import dataclass

import numpy as np

from .minerror import (
    Ensemble,
    TwoStateFamily,
    _resolve_assignment,
    channel_matrix,
    error_probability,
    helstrom_bound,
    helstrom_measurement,
)
from .povm import Povm
from .unambiguous import UnambiguousPovm

#: Born probabilities below this are clamped to exact zero before sampling,
#: so impossible outcomes are never drawn.
PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class SimConfig:
    """Simulation parameters: seed, trial count and error-bar multiplier."""

    seed: int
    trials: int
    confidence: float = 3.0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class SimReport:
    """Counts and rate comparisons from one simulation run.

    ``counts[j, k]`` is the number of trials preparing state j and
    observing outcome k; rows of ``empirical``/``analytic``/``stderr``/
    ``passed`` are keyed by metric name.  Counts always sum to the trial
    count.
    """

    config: SimConfig
    outcome_labels: tuple
    counts: np.ndarray
    empirical: dict
    analytic: dict
    stderr: dict
    passed: dict

    @property
    def outcome_rates(self) -> np.ndarray:
        return self.counts.sum(axis=0) / self.config.trials


def trial_uniforms(seed: int, trials: int, streams: int) -> np.ndarray:
    """Uniform variates in [0, 1), shape (trials, streams), keyed by seed."""
    gen = np.random.Generator(np.random.Philox(key=seed))
    return gen.random((trials, streams))


def clean_probs(probs) -> np.ndarray:
    """Clamp sub-floor probabilities to zero and renormalise.

    The total must already be 1 within 1e-9; anything else is an input
    error rather than noise.
    """
    p = np.asarray(probs, dtype=float).copy()
    p[p < PROB_FLOOR] = 0.0
    total = p.sum()
    if not 1.0 - 1e-9 <= total <= 1.0 + 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, expected 1")
    return p / total


def sample_categorical(probs, uniforms) -> np.ndarray:
    """Inverse-CDF draw of outcome indices for an array of uniforms.

    Zero-probability outcomes have zero-width CDF intervals and are never
    selected.
    """
    p = clean_probs(probs)
    cum = np.cumsum(p)
    idx = np.searchsorted(cum, np.asarray(uniforms), side="right")
    return np.minimum(idx, p.size - 1)


def _binomial_stderr(p: float, n: int) -> float:
    return float(np.sqrt(max(p * (1.0 - p), 0.0) / n))


def _passes(empirical: float, analytic: float, stderr: float, confidence: float) -> bool:
    if stderr == 0.0:
        return empirical == analytic
    return abs(empirical - analytic) <= confidence * stderr


def _sample_run(ens: Ensemble, povm: Povm, cfg: SimConfig):
    """Draw (state index, outcome index) pairs for every trial."""
    cm = channel_matrix(ens, povm)
    u = trial_uniforms(cfg.seed, cfg.trials, 2)
    state_idx = sample_categorical(ens.priors, u[:, 0])
    outcome_idx = np.empty(cfg.trials, dtype=np.intp)
    for j in range(len(ens)):
        mask = state_idx == j
        if mask.any():
            outcome_idx[mask] = sample_categorical(cm[j], u[mask, 1])
    counts = np.zeros((len(ens), len(povm)), dtype=np.int64)
    np.add.at(counts, (state_idx, outcome_idx), 1)
    return state_idx, outcome_idx, counts


def run_discrimination(ens: Ensemble, povm: Povm, cfg: SimConfig,
                       assignment=None) -> SimReport:
    """Simulate hypothesis testing and compare the empirical error rate.

    The analytic target is the exact average error probability of the
    measurement; the error bar is the binomial standard error at that
    value.
    """
    assignment = _resolve_assignment(assignment, len(ens), len(povm))
    state_idx, outcome_idx, counts = _sample_run(ens, povm, cfg)
    detected = np.array([-1 if j is None else j for j in assignment])
    errors = detected[outcome_idx] != state_idx
    empirical = float(errors.mean())
    analytic = error_probability(ens, povm, assignment)
    stderr = _binomial_stderr(analytic, cfg.trials)
    counts.setflags(write=False)
    return SimReport(
        cfg, povm.labels, counts,
        {"error_rate": empirical},
        {"error_rate": analytic},
        {"error_rate": stderr},
        {"error_rate": _passes(empirical, analytic, stderr, cfg.confidence)},
    )


def run_unambiguous(states, upovm: UnambiguousPovm, cfg: SimConfig) -> SimReport:
    """Simulate error-free discrimination of equiprobable states.

    Tracks the inconclusive and success rates against their analytic
    values and the wrong-detector rate, which must be exactly zero: the
    corresponding Born probabilities vanish, and clamped-to-zero outcomes
    are structurally excluded from the draw.
    """
    ens = Ensemble.uniform(states)
    povm = upovm.as_povm().validate()
    n = len(ens)
    state_idx, outcome_idx, counts = _sample_run(ens, povm, cfg)
    inconclusive = outcome_idx == n
    wrong = ~inconclusive & (outcome_idx != state_idx)
    correct = ~inconclusive & ~wrong

    cm = channel_matrix(ens, povm)
    analytic_inconclusive = float(np.dot(ens.priors, cm[:, n]))
    analytic_success = 1.0 - analytic_inconclusive

    empirical = {
        "inconclusive_rate": float(inconclusive.mean()),
        "wrong_rate": float(wrong.mean()),
        "success_rate": float(correct.mean()),
    }
    analytic = {
        "inconclusive_rate": analytic_inconclusive,
        "wrong_rate": 0.0,
        "success_rate": analytic_success,
    }
    stderr = {
        "inconclusive_rate": _binomial_stderr(analytic_inconclusive, cfg.trials),
        "wrong_rate": 0.0,
        "success_rate": _binomial_stderr(analytic_success, cfg.trials),
    }
    passed = {key: _passes(empirical[key], analytic[key], stderr[key], cfg.confidence)
              for key in empirical}
    counts.setflags(write=False)
    return SimReport(cfg, povm.labels, counts, empirical, analytic, stderr, passed)


def sweep_theta(thetas, cfg: SimConfig) -> list:
    """Empirical vs analytic two-state error rate across a theta grid.

    For each angle the equal-prior optimal measurement is simulated with
    a per-row seed of cfg.seed + row index.  Returns rows
    (theta, analytic, empirical, stderr, trials, seed).
    """
    rows = []
    for i, theta in enumerate(thetas):
        theta = float(theta)
        if not 0.0 < theta <= np.pi / 4 + 1e-12:
            raise ValueError(f"theta {theta} outside (0, pi/4]")
        fam = TwoStateFamily(theta)
        row_cfg = SimConfig(cfg.seed + i, cfg.trials, cfg.confidence)
        report = run_discrimination(fam.ensemble(), helstrom_measurement(fam), row_cfg)
        rows.append((
            theta,
            helstrom_bound(0.5, fam.overlap),
            report.empirical["error_rate"],
            report.stderr["error_rate"],
            cfg.trials,
            row_cfg.seed,
        ))
    return rows
