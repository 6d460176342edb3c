"""Quantum hypothesis testing with the minimum probability of error.

Covers the exactly solvable cases: the two-state optimum with its closed
form bound and measurement, the optimality certificate for arbitrary
ensembles, cyclic (symmetric) state families, the square-root measurement
that is optimal for them under uniform priors, and an exhaustive
projective grid search used as an independent oracle for two states.
"""

from dataclasses import dataclass

import numpy as np

from .povm import Povm, outcome_probs
from .qcore import (
    DEFAULT_CUTOFF,
    DEFAULT_TOL,
    DimensionMismatchError,
    InvalidOperatorError,
    herm_inv_sqrt,
    ket_to_density,
    validate_density,
)


@dataclass(frozen=True)
class Ensemble:
    """States with their a priori probabilities.

    ``states`` may be given as kets or density matrices; kets are promoted
    to rank-1 densities.  Priors must be non-negative and sum to 1.
    """

    states: tuple
    priors: np.ndarray

    def __post_init__(self):
        rhos = []
        for s in self.states:
            s = np.asarray(s, dtype=complex)
            rhos.append(validate_density(ket_to_density(s) if s.ndim == 1 else s))
        if not rhos:
            raise InvalidOperatorError("an ensemble needs at least one state")
        dim = rhos[0].shape[0]
        if any(r.shape[0] != dim for r in rhos):
            raise DimensionMismatchError("ensemble states differ in dimension")
        priors = np.array(self.priors, dtype=float)
        if priors.shape != (len(rhos),):
            raise DimensionMismatchError("one prior per state required")
        if priors.min() < -DEFAULT_TOL or abs(priors.sum() - 1.0) > DEFAULT_TOL:
            raise InvalidOperatorError(
                f"priors must be non-negative and sum to 1, got {priors!r}")
        priors.setflags(write=False)
        object.__setattr__(self, "states", tuple(rhos))
        object.__setattr__(self, "priors", priors)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def __len__(self) -> int:
        return len(self.states)

    @classmethod
    def uniform(cls, states) -> "Ensemble":
        n = len(states)
        return cls(tuple(states), np.full(n, 1.0 / n))


def _resolve_assignment(assignment, n_states, n_outcomes):
    """Outcome -> state map as a list with None for unassigned outcomes."""
    if assignment is None:
        if n_outcomes < n_states:
            raise DimensionMismatchError(
                f"{n_outcomes} outcomes cannot detect {n_states} states")
        assignment = list(range(n_states)) + [None] * (n_outcomes - n_states)
    assignment = list(assignment)
    if len(assignment) != n_outcomes:
        raise DimensionMismatchError("assignment must map every outcome")
    hits = [a for a in assignment if a is not None]
    if len(set(hits)) != len(hits) or any(not 0 <= a < n_states for a in hits):
        raise ValueError("assignment must injectively map outcomes to state indices")
    return assignment


def channel_matrix(ens: Ensemble, povm: Povm, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Conditional probabilities P(outcome k | state j) as an N x K matrix."""
    return np.vstack([outcome_probs(povm, rho, tol) for rho in ens.states])


def error_probability(ens: Ensemble, povm: Povm, assignment=None,
                      tol: float = DEFAULT_TOL) -> float:
    """Average probability of wrongly identifying the prepared state.

    ``assignment`` maps outcome index -> state index (default: outcome j
    detects state j; extra outcomes count as errors).
    """
    assignment = _resolve_assignment(assignment, len(ens), len(povm))
    cm = channel_matrix(ens, povm, tol)
    p_correct = sum(ens.priors[j] * cm[j, k]
                    for k, j in enumerate(assignment) if j is not None)
    return float(1.0 - p_correct)


def bayes_cost(ens: Ensemble, povm: Povm, cost, assignment=None,
               tol: float = DEFAULT_TOL) -> float:
    """Average cost sum_jk eta_j C[hypothesis(k), j] P(k | j).

    With zero diagonal and constant off-diagonal cost c this reduces to
    c times the error probability.
    """
    cost = np.asarray(cost, dtype=float)
    n = len(ens)
    if cost.ndim != 2 or cost.shape[1] != n:
        raise DimensionMismatchError(
            f"cost matrix shape {cost.shape} does not fit {n} states")
    assignment = _resolve_assignment(assignment, cost.shape[0], len(povm))
    cm = channel_matrix(ens, povm, tol)
    total = 0.0
    for k, hyp in enumerate(assignment):
        if hyp is None:
            continue
        total += float(np.dot(ens.priors * cost[hyp, :], cm[:, k]))
    return total


# ---------------------------------------------------------------------------
# two pure states

def helstrom_bound(eta_plus: float, overlap: float) -> float:
    """Minimum error probability for two pure states.

    ``overlap`` is the modulus of the inner product of the two states and
    ``eta_plus`` the prior of the first.
    """
    if not 0.0 <= eta_plus <= 1.0:
        raise ValueError(f"prior {eta_plus} outside [0, 1]")
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap {overlap} outside [0, 1]")
    eta_minus = 1.0 - eta_plus
    return 0.5 * (1.0 - np.sqrt(1.0 - 4.0 * eta_plus * eta_minus * overlap ** 2))


@dataclass(frozen=True)
class TwoStateFamily:
    """Pair of pure states cos(theta)|0> +- sin(theta)|1> with priors.

    ``basis`` holds the two orthonormal reference kets as columns; the
    default is the standard qubit basis.  theta in [0, pi/4] makes the
    overlap cos(2 theta) non-negative.
    """

    theta: float
    eta_plus: float = 0.5
    basis: np.ndarray = None

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi / 4 + 1e-12:
            raise ValueError(f"theta {self.theta} outside [0, pi/4]")
        if not 0.0 <= self.eta_plus <= 1.0:
            raise ValueError(f"prior {self.eta_plus} outside [0, 1]")
        basis = self.basis
        if basis is None:
            basis = np.eye(2, dtype=complex)
        else:
            basis = np.asarray(basis, dtype=complex)
            if basis.ndim != 2 or basis.shape[1] != 2:
                raise DimensionMismatchError("basis must have two column kets")
            if np.abs(basis.conj().T @ basis - np.eye(2)).max() > DEFAULT_TOL:
                raise InvalidOperatorError("basis columns are not orthonormal")
        basis = np.array(basis)
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def states(self) -> tuple:
        c, s = np.cos(self.theta), np.sin(self.theta)
        plus, minus = self.basis[:, 0], self.basis[:, 1]
        return (c * plus + s * minus, c * plus - s * minus)

    @property
    def overlap(self) -> float:
        # the angle check admits pi/4 + 1e-12, where cos(2 theta) rounds below 0
        return float(max(np.cos(2.0 * self.theta), 0.0))

    @property
    def priors(self) -> np.ndarray:
        return np.array([self.eta_plus, 1.0 - self.eta_plus])

    @property
    def bias(self) -> float:
        """Prior imbalance eta_plus - eta_minus."""
        return 2.0 * self.eta_plus - 1.0

    def ensemble(self) -> Ensemble:
        return Ensemble(self.states, self.priors)


def helstrom_measurement(fam: TwoStateFamily) -> Povm:
    """Projective measurement achieving the two-state minimum error.

    The detector kets tilt towards the more probable state through the
    parameter xi = Delta cos(2 theta) / sqrt(1 + cos^2(2 theta)(Delta^2 - 1));
    equal priors give the symmetric pair (|0> +- |1>)/sqrt(2).
    """
    delta = fam.bias
    c2 = np.cos(2.0 * fam.theta)
    if abs(c2) < 1e-15:
        xi = 0.0  # orthogonal pair; avoids 0/0-adjacent cancellation
    else:
        xi = delta * c2 / np.sqrt(1.0 + c2 ** 2 * (delta ** 2 - 1.0))
    plus, minus = fam.basis[:, 0], fam.basis[:, 1]
    omega_plus = (np.sqrt(1.0 + xi) * plus + np.sqrt(1.0 - xi) * minus) / np.sqrt(2.0)
    omega_minus = (np.sqrt(1.0 - xi) * plus - np.sqrt(1.0 + xi) * minus) / np.sqrt(2.0)
    elements = [ket_to_density(omega_plus), ket_to_density(omega_minus)]
    labels = ["+", "-"]
    d = fam.basis.shape[0]
    if d > 2:
        rest = np.eye(d) - elements[0] - elements[1]
        elements.append(rest)
        labels.append(None)
    return Povm(tuple(elements), tuple(labels)).validate()


# ---------------------------------------------------------------------------
# optimality certificate

@dataclass(frozen=True)
class OptimalityReport:
    """Certificate data for a minimum-error measurement.

    ``gamma`` is the Lagrange operator sum_k eta_k Pi_k rho_k; the
    measurement is optimal iff every pairwise residual vanishes and every
    operator gamma - eta_j rho_j is positive semi-definite.
    """

    gamma: np.ndarray
    pairwise_residuals: np.ndarray
    psd_margins: np.ndarray
    hermiticity_dev: float
    passed: bool


def certify_optimality(ens: Ensemble, povm: Povm, assignment=None,
                       tol: float = DEFAULT_TOL) -> OptimalityReport:
    """Check the necessary and sufficient minimum-error conditions.

    Evaluates Pi_j (eta_j rho_j - eta_k rho_k) Pi_k for all state pairs and
    the spectra of gamma - eta_j rho_j, reporting max-entry residuals and
    smallest eigenvalues.
    """
    assignment = _resolve_assignment(assignment, len(ens), len(povm))
    n = len(ens)
    detect = [None] * n
    for k, j in enumerate(assignment):
        if j is not None:
            detect[j] = povm.elements[k]
    if any(e is None for e in detect):
        raise ValueError("every state needs an assigned POVM element")

    weighted = [ens.priors[j] * ens.states[j] for j in range(n)]
    gamma = sum(detect[j] @ weighted[j] for j in range(n))
    herm_dev = float(np.abs(gamma - gamma.conj().T).max())
    gamma_h = 0.5 * (gamma + gamma.conj().T)

    residuals = np.zeros((n, n))
    for j in range(n):
        for k in range(n):
            op = detect[j] @ (weighted[j] - weighted[k]) @ detect[k]
            residuals[j, k] = np.abs(op).max()
    margins = np.array([float(np.linalg.eigvalsh(gamma_h - weighted[j]).min())
                        for j in range(n)])
    passed = bool(residuals.max() <= tol and margins.min() >= -tol
                  and herm_dev <= tol)
    gamma = np.array(gamma)
    gamma.setflags(write=False)
    residuals.setflags(write=False)
    margins.setflags(write=False)
    return OptimalityReport(gamma, residuals, margins, herm_dev, passed)


# ---------------------------------------------------------------------------
# symmetric families and the square-root measurement

@dataclass(frozen=True)
class SymmetricFamily:
    """States cycled into one another by a single unitary.

    State j (j = 1..N) is sum_k c_k exp(2 pi i j k / N) |b_k> over the
    orthonormal ``basis`` columns |b_k>; the ``generator`` advances each
    state to its successor and wraps the last around to the first.
    """

    coefficients: np.ndarray
    basis: np.ndarray
    generator: np.ndarray
    states: tuple


def make_symmetric(coefficients, basis=None) -> SymmetricFamily:
    """Build the cyclic family with the given Fourier coefficients.

    ``basis`` columns default to the standard basis of C^N.  The
    coefficients must have squared moduli summing to 1.
    """
    c = np.asarray(coefficients, dtype=complex)
    n = c.size
    if n < 2:
        raise ValueError("a symmetric family needs at least two coefficients")
    if abs(float(np.sum(np.abs(c) ** 2)) - 1.0) > DEFAULT_TOL:
        raise InvalidOperatorError("coefficient moduli squared must sum to 1")
    if basis is None:
        basis = np.eye(n, dtype=complex)
    else:
        basis = np.asarray(basis, dtype=complex)
        if basis.shape[1] != n:
            raise DimensionMismatchError("one basis column per coefficient required")
        if np.abs(basis.conj().T @ basis - np.eye(n)).max() > DEFAULT_TOL:
            raise InvalidOperatorError("basis columns are not orthonormal")

    ks = np.arange(1, n + 1)
    phases = np.exp(2j * np.pi * ks / n)
    states = tuple(basis @ (c * np.exp(2j * np.pi * j * ks / n)) for j in ks)
    generator = (basis * phases) @ basis.conj().T
    c = np.array(c)
    basis = np.array(basis)
    generator = np.array(generator)
    for arr in (c, basis, generator):
        arr.setflags(write=False)
    return SymmetricFamily(c, basis, generator, states)


def _sum_op(states):
    return sum(ket_to_density(s) for s in states)


def square_root_measurement(states, priors=None, tol: float = DEFAULT_TOL) -> Povm:
    """POVM with elements built from Phi^(-1/2)|psi_j>, Phi = sum |psi_j><psi_j|.

    Defined for uniform priors, where it is the minimum-error optimum for
    symmetric families.  On a rank-deficient Phi the inverse square root
    acts on the support only; if the states do not span the space, the
    complement projector is appended as an extra outcome labelled None so
    the elements always resolve the identity.
    """
    states = [np.asarray(s, dtype=complex) for s in states]
    if not states:
        raise ValueError("at least one state is required")
    if priors is not None:
        priors = np.asarray(priors, dtype=float)
        if np.abs(priors - 1.0 / len(states)).max() > DEFAULT_TOL:
            raise ValueError("the square-root measurement here requires uniform priors")
    phi = _sum_op(states)
    root = herm_inv_sqrt(phi, tol=tol)
    omegas = [root @ s for s in states]
    elements = [np.outer(w, w.conj()) for w in omegas]
    labels = list(range(len(states)))
    deficit = np.eye(phi.shape[0]) - sum(elements)
    if np.abs(deficit).max() > tol:
        elements.append(deficit)
        labels.append(None)
    return Povm(tuple(elements), tuple(labels)).validate(tol)


def srm_error(states, tol: float = DEFAULT_TOL) -> float:
    """Error probability of the square-root measurement at uniform priors.

    Equals 1 - (1/N) sum_j |<psi_j| Phi^(-1/2) |psi_j>|^2.
    """
    states = [np.asarray(s, dtype=complex) for s in states]
    if not states:
        raise ValueError("at least one state is required")
    root = herm_inv_sqrt(_sum_op(states), tol=tol)
    n = len(states)
    return float(1.0 - sum(abs(np.vdot(s, root @ s)) ** 2 for s in states) / n)


def trine_states() -> tuple:
    """Three real qubit kets at mutual angle 2 pi / 3.

    Their projectors sum to (3/2) 1, and a rotation by 2 pi / 3 cycles
    them; the equiprobable minimum error probability is 1/3.
    """
    return (
        np.array([1.0, 0.0], dtype=complex),
        np.array([-0.5, np.sqrt(3.0) / 2.0], dtype=complex),
        np.array([-0.5, -np.sqrt(3.0) / 2.0], dtype=complex),
    )


# ---------------------------------------------------------------------------
# brute-force oracle for two states

def brute_force_two_state(ens: Ensemble, resolution: float = 1e-4):
    """Grid search over projective measurements for a two-state ensemble.

    For two linearly independent pure states there is always an optimal
    von Neumann measurement, and its detector kets lie in the real span of
    the (suitably rephased) states.  The basis angle is swept over
    [0, pi) at the given resolution and the minimum achieved error is
    returned with the best measurement; ties go to the smallest angle, so
    the result does not depend on evaluation order.  The minimum is within
    O(resolution^2) of the exact bound.
    """
    if len(ens) != 2:
        raise ValueError("exactly two states required")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    kets = []
    for rho in ens.states:
        w, v = np.linalg.eigh(rho)
        if w[-1] < 1.0 - DEFAULT_TOL:
            raise InvalidOperatorError("brute-force search requires pure states")
        kets.append(v[:, -1])
    psi_p, psi_m = kets
    z = complex(np.vdot(psi_p, psi_m))
    s = abs(z)
    if s > 0:
        psi_m = psi_m * (z.conjugate() / s)  # makes the overlap real >= 0
    if 1.0 - s ** 2 <= DEFAULT_CUTOFF:
        raise ValueError("states do not span a 2-dimensional subspace")
    e1 = psi_p
    e2 = (psi_m - s * psi_p) / np.sqrt(1.0 - s ** 2)

    eta_p, eta_m = ens.priors
    phis = np.arange(0.0, np.pi, resolution)
    # coordinates of the rephased states in the real span: psi_p = (1, 0),
    # psi_m = (s, sqrt(1 - s^2))
    amp_p = np.cos(phis)
    amp_m = np.cos(phis) * np.sqrt(1.0 - s ** 2) - np.sin(phis) * s
    errors = 1.0 - eta_p * amp_p ** 2 - eta_m * amp_m ** 2
    best = int(np.argmin(errors))
    phi = phis[best]

    omega_p = np.cos(phi) * e1 + np.sin(phi) * e2
    omega_m = -np.sin(phi) * e1 + np.cos(phi) * e2
    elements = [ket_to_density(omega_p), ket_to_density(omega_m)]
    labels = ["+", "-"]
    d = psi_p.shape[0]
    rest = np.eye(d) - elements[0] - elements[1]
    if np.abs(rest).max() > DEFAULT_TOL:
        elements.append(rest)
        labels.append(None)
    return float(errors[best]), Povm(tuple(elements), tuple(labels)).validate()
