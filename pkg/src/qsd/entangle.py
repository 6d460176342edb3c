"""Probabilistic entanglement concentration by local filtering.

A partially entangled pure state, rewritten in Fourier-conjugate local
bases, looks like a uniform superposition of symmetric non-orthogonal
states on one side against an orthonormal basis on the other.  The local
operation that unambiguously orthogonalises those symmetric states
therefore converts the state, with the same success probability as the
discrimination optimum, into a maximally entangled one.
"""

from dataclasses import dataclass

import numpy as np

from .minerror import SymmetricFamily, make_symmetric
from .povm import Povm, post_state
from .qcore import (
    DEFAULT_CUTOFF,
    DEFAULT_TOL,
    BipartiteState,
    ket_to_density,
    schmidt,
)
from .unambiguous import reciprocal_states, symmetric_unambiguous_optimum


class RankDeficiencyError(ValueError):
    """The Schmidt spectrum does not have full rank."""


@dataclass(frozen=True)
class ConcentrationPlan:
    """Everything needed to run one concentration attempt.

    ``x_family`` holds the symmetric states induced on subsystem A whose
    uniform superposition against ``y_basis`` reproduces the input;
    ``orthogonaliser`` maps each of them, with amplitude sqrt(success),
    onto the corresponding ``target_basis`` ket.
    """

    coefficients: np.ndarray
    x_family: SymmetricFamily
    y_basis: tuple
    target_basis: tuple
    orthogonaliser: np.ndarray
    success_prob: float

    @property
    def x_states(self) -> tuple:
        return self.x_family.states

    def filter_povm(self) -> Povm:
        """Two-outcome success/failure POVM implemented by the filtering."""
        a = self.orthogonaliser
        ok = a.conj().T @ a
        rest = np.eye(a.shape[1]) - ok
        return Povm((ok, rest), ("ok", "?")).validate()


def build_plan(psi: BipartiteState, cutoff: float = DEFAULT_CUTOFF) -> ConcentrationPlan:
    """Construct the concentration operator for a full-rank bipartite state.

    The Schmidt rank must equal min(d_A, d_B); otherwise the induced
    symmetric states would be linearly dependent and no error-free
    orthogonalisation exists.
    """
    sd = schmidt(psi, cutoff)
    n = min(psi.dims)
    if len(sd.coefficients) < n:
        raise RankDeficiencyError(
            f"Schmidt rank {len(sd.coefficients)} below full rank {n}")
    c = sd.coefficients.astype(complex)

    alpha = np.column_stack(sd.basis_a)
    x_family = make_symmetric(c, basis=alpha)

    ks = np.arange(1, n + 1)
    y_basis = tuple(
        sum(np.exp(-2j * np.pi * j * k / n) * sd.basis_b[j - 1] for j in ks) / np.sqrt(n)
        for k in ks)

    target = sd.basis_a  # eigenbasis of the cycling generator
    recs = reciprocal_states(x_family.states, cutoff)
    p_success, _ = symmetric_unambiguous_optimum(x_family, cutoff)
    amp = np.sqrt(p_success)
    a_op = sum(amp / np.vdot(rec, x) * np.outer(phi, rec.conj())
               for x, rec, phi in zip(x_family.states, recs, target))
    a_op = np.array(a_op)
    a_op.setflags(write=False)
    return ConcentrationPlan(sd.coefficients, x_family, y_basis, target,
                             a_op, p_success)


def concentrate(psi: BipartiteState, cutoff: float = DEFAULT_CUTOFF):
    """Filter one side of a bipartite state towards maximal entanglement.

    Returns (output state, success probability), where the probability is
    the squared norm of (A (x) 1)|psi> and the output is the renormalised
    filtered state with entropy log2 of the Schmidt rank.
    """
    plan = build_plan(psi, cutoff)
    filtered = plan.orthogonaliser @ psi.amplitudes
    success = float(np.sum(np.abs(filtered) ** 2))
    return BipartiteState(filtered / np.sqrt(success)), success


@dataclass(frozen=True)
class OrthogonaliserReport:
    """Action of the filtering operator on each induced symmetric state."""

    outcome_probs: np.ndarray
    target_fidelities: np.ndarray
    failure_margin: float
    passed: bool


def verify_orthogonaliser(plan: ConcentrationPlan,
                          tol: float = DEFAULT_TOL) -> OrthogonaliserReport:
    """Check that the filter maps each symmetric state onto its target.

    Success on state k must occur with the planned probability and leave
    the k-th target basis ket; the complementary failure operator exists
    iff 1 - A^dag A is positive semi-definite.
    """
    a = plan.orthogonaliser
    probs, fids = [], []
    for x, phi in zip(plan.x_states, plan.target_basis):
        posterior, p = post_state(a, ket_to_density(x), tol)
        probs.append(p)
        fids.append(float((np.conj(phi) @ posterior @ phi).real))
    probs = np.array(probs)
    fids = np.array(fids)
    margin = float(np.linalg.eigvalsh(
        np.eye(a.shape[1]) - a.conj().T @ a).min())
    passed = bool(np.abs(probs - plan.success_prob).max() <= tol
                  and fids.min() >= 1.0 - tol and margin >= -tol)
    probs.setflags(write=False)
    fids.setflags(write=False)
    return OrthogonaliserReport(probs, fids, margin, passed)
