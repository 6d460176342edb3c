"""Error-free state discrimination with an inconclusive outcome.

Conclusive POVM elements are built on reciprocal states, each orthogonal
to all ensemble members but its own, so a conclusive click can never lie.
The price is the inconclusive outcome, whose minimum probability for two
equiprobable pure states is the Ivanovic-Dieks-Peres (IDP) limit: the
modulus of their overlap.  For linearly independent symmetric families
the optimum is closed-form as well.  A two-beamsplitter interferometer
realising the two-state optimum is simulated as an explicit unitary
network on a path (x) polarisation space.
"""

from dataclasses import dataclass

import numpy as np

from .minerror import SymmetricFamily
from .povm import ImpossibleOutcomeError, Povm, ZERO_PROB
from .qcore import (
    DEFAULT_CUTOFF,
    DEFAULT_TOL,
    canonical_phase,
    herm_sqrt,
    ket_to_density,
)


class LinearDependenceError(ValueError):
    """The states do not form a linearly independent set."""


class InfeasibleSuccessError(ValueError):
    """Requested success probabilities make the inconclusive element negative."""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(
            "requested success probabilities are infeasible: inconclusive "
            f"element has most negative eigenvalue {self.min_eigenvalue:.6e}")


def idp_bound(overlap: float) -> float:
    """Minimum inconclusive probability for two equiprobable pure states.

    Equal to the modulus of the overlap; each state is then identified
    with probability 1 - overlap.
    """
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap {overlap} outside [0, 1]")
    return float(overlap)


def reciprocal_states(states, cutoff: float = DEFAULT_CUTOFF) -> tuple:
    """Normalised kets, each orthogonal to every input state but one.

    These are unique up to phase for linearly independent inputs (the
    analogue of reciprocal lattice vectors); the canonical phase is
    applied.  Raises LinearDependenceError when the Gram matrix is rank
    deficient at the cutoff.
    """
    cols = np.column_stack([np.asarray(s, dtype=complex) for s in states])
    gram = cols.conj().T @ cols
    eigs = np.linalg.eigvalsh(gram)
    if eigs.min() <= cutoff * max(float(eigs.max()), 1e-300):
        raise LinearDependenceError(
            f"states are linearly dependent (Gram eigenvalue {eigs.min():.3e})")
    duals = cols @ np.linalg.inv(gram)
    out = []
    for j in range(cols.shape[1]):
        v = duals[:, j]
        out.append(canonical_phase(v / np.linalg.norm(v)))
    return tuple(out)


@dataclass(frozen=True)
class UnambiguousPovm:
    """Conclusive elements plus the inconclusive remainder.

    ``success_probs[j]`` is the probability that state j triggers its own
    conclusive outcome; every other state triggers it with probability 0.
    """

    conclusive: tuple
    inconclusive: np.ndarray
    success_probs: np.ndarray

    def as_povm(self) -> Povm:
        """Full POVM with the inconclusive outcome labelled '?'."""
        labels = tuple(range(len(self.conclusive))) + ("?",)
        return Povm(self.conclusive + (self.inconclusive,), labels)


def unambiguous_povm(states, success_probs, tol: float = DEFAULT_TOL) -> UnambiguousPovm:
    """Error-free discrimination POVM at the requested success levels.

    Each conclusive element is P_j / |<rec_j|psi_j>|^2 times the projector
    on the reciprocal state; the remainder 1 - sum must stay positive.
    Raises InfeasibleSuccessError (with the most negative eigenvalue) when
    the requested P_j overreach.
    """
    states = [np.asarray(s, dtype=complex) for s in states]
    n = len(states)
    probs = np.broadcast_to(np.asarray(success_probs, dtype=float), (n,)).copy()
    if probs.min() < -tol or probs.max() > 1.0 + tol:
        raise ValueError(f"success probabilities {probs!r} outside [0, 1]")
    recs = reciprocal_states(states)
    d = states[0].shape[0]
    elems = []
    for psi, rec, p in zip(states, recs, probs):
        scale = p / abs(np.vdot(rec, psi)) ** 2
        elems.append(scale * ket_to_density(rec))
    rest = np.eye(d) - sum(elems)
    rest = 0.5 * (rest + rest.conj().T)
    min_eig = float(np.linalg.eigvalsh(rest).min())
    if min_eig < -tol:
        raise InfeasibleSuccessError(min_eig)
    probs.setflags(write=False)
    rest.setflags(write=False)
    return UnambiguousPovm(tuple(elems), rest, probs)


def symmetric_unambiguous_optimum(fam: SymmetricFamily,
                                  cutoff: float = DEFAULT_CUTOFF) -> tuple:
    """Optimal (per-state success, inconclusive) for a symmetric family.

    For N linearly independent symmetric states with equal priors the
    conditional success probability is the same for every state and equals
    N * min_k |c_k|^2; the inconclusive probability is its complement.
    Any index attaining the minimum gives the same value.
    """
    c2 = np.abs(fam.coefficients) ** 2
    if c2.min() <= cutoff * max(float(c2.max()), 1e-300):
        raise LinearDependenceError(
            "a vanishing coefficient makes the symmetric states linearly dependent")
    p_success = float(len(c2) * c2.min())
    return p_success, 1.0 - p_success


def failure_posterior(states, upovm: UnambiguousPovm,
                      tol: float = DEFAULT_TOL) -> tuple:
    """States left behind by an inconclusive result.

    Applies the positive square root of the inconclusive element as the
    back-action.  At the two-state optimum both posteriors coincide; for
    larger optimal families the posteriors become linearly dependent.
    Raises ImpossibleOutcomeError for a state that can never fail.
    """
    a_fail = herm_sqrt(upovm.inconclusive, tol)
    out = []
    for s in states:
        v = a_fail @ np.asarray(s, dtype=complex)
        p = float(np.vdot(v, v).real)
        if p < ZERO_PROB:
            raise ImpossibleOutcomeError(
                f"inconclusive probability {p:.3e} is zero for this state")
        out.append(canonical_phase(v / np.sqrt(p)))
    return tuple(out)


# ---------------------------------------------------------------------------
# interferometric realisation of the two-state optimum

# Mode index over path (x) polarisation: 2 * path + pol with path 0 the
# input/monitor rail, path 1 the output rail, pol 0 vertical, pol 1
# horizontal.
_LOW_V, _LOW_H, _UP_V, _UP_H = 0, 1, 2, 3


@dataclass(frozen=True)
class InterferometerModel:
    """Unitary network realising error-free two-state discrimination.

    The input kets cos(theta)|V> +- sin(theta)|H> enter on the lower rail.
    A polarising splitter lifts the vertical component to the upper rail,
    a partially transmitting splitter with transmission
    t = sqrt(cos 2 theta)/cos(theta) leaks it to the inconclusive monitor,
    and a second polarising splitter recombines the rails; the surviving
    components are then orthogonal and read out at +-45 degrees.
    """

    theta: float
    transmission: float
    reflection: float
    unitary: np.ndarray
    detectors: dict
    input_states: dict

    def output_state(self, which: str) -> np.ndarray:
        """Full 4-mode state after the network for input '+' or '-'."""
        return self.unitary @ self.input_states[which]

    def conclusive_branch(self, which: str) -> np.ndarray:
        """Normalised (V, H) state on the output rail for input '+' or '-'."""
        out = self.output_state(which)
        branch = out[[_UP_V, _UP_H]]
        return branch / np.linalg.norm(branch)


def build_interferometer(theta: float) -> InterferometerModel:
    """Construct the discrimination interferometer for theta in (0, pi/4]."""
    if not 0.0 < theta <= np.pi / 4 + 1e-12:
        raise ValueError(f"theta {theta} outside (0, pi/4]")
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    # the angle check admits pi/4 + 1e-12, where cos(2 theta) rounds below 0
    t = np.sqrt(max(np.cos(2.0 * theta), 0.0)) / cos_t
    r = np.sqrt(max(1.0 - t ** 2, 0.0))

    pbs1 = np.eye(4, dtype=complex)
    pbs1[[_LOW_V, _UP_V], :] = pbs1[[_UP_V, _LOW_V], :]

    beamsplitter = np.eye(4, dtype=complex)
    beamsplitter[_LOW_V, _LOW_V] = -r
    beamsplitter[_LOW_V, _UP_V] = t
    beamsplitter[_UP_V, _LOW_V] = t
    beamsplitter[_UP_V, _UP_V] = r

    pbs2 = np.eye(4, dtype=complex)
    pbs2[[_LOW_H, _UP_H], :] = pbs2[[_UP_H, _LOW_H], :]

    unitary = pbs2 @ beamsplitter @ pbs1

    def _det(vec):
        return ket_to_density(np.asarray(vec, dtype=complex))

    sq2 = np.sqrt(2.0)
    detectors = {
        "D+": _det([0, 0, 1 / sq2, 1 / sq2]),
        "D-": _det([0, 0, 1 / sq2, -1 / sq2]),
        "D?": _det([1, 0, 0, 0]),
    }
    inputs = {
        "+": np.array([cos_t, sin_t, 0, 0], dtype=complex),
        "-": np.array([cos_t, -sin_t, 0, 0], dtype=complex),
    }
    unitary = np.array(unitary)
    unitary.setflags(write=False)
    return InterferometerModel(theta, float(t), float(r), unitary, detectors, inputs)


def interferometer_sim(theta: float) -> dict:
    """Detector statistics of the interferometer for both input states.

    Returns {'+': {...}, '-': {...}} with detector probabilities for
    'D+', 'D-' and 'D?'.  The wrong detector never fires, and 'D?' clicks
    with probability cos(2 theta) for either input.
    """
    model = build_interferometer(theta)
    stats = {}
    for which in ("+", "-"):
        out = model.output_state(which)
        stats[which] = {name: float((out.conj() @ proj @ out).real)
                        for name, proj in model.detectors.items()}
    return stats
