"""Generalised measurements: POVMs, measurement back-action, dilation.

A POVM is a set of positive operators resolving the identity; its traces
against a density operator give the outcome probabilities.  Measurement
transformation operators lift a POVM to a state update, and any POVM can
be realised as a unitary on system + ancilla followed by a projective
ancilla readout.
"""

from dataclasses import dataclass

import numpy as np

from .qcore import (
    DEFAULT_TOL,
    DimensionMismatchError,
    InvalidOperatorError,
    herm_sqrt,
    is_hermitian,
    validate_density,
)

#: Outcome probabilities below this are treated as structurally impossible.
ZERO_PROB = 1e-12


class ImpossibleOutcomeError(ValueError):
    """Conditioning on an outcome whose probability is (numerically) zero."""


@dataclass(frozen=True)
class Povm:
    """Positive operators summing to the identity, with outcome labels."""

    elements: tuple
    labels: tuple = None

    def __post_init__(self):
        elems = tuple(np.array(e, dtype=complex) for e in self.elements)
        if not elems:
            raise InvalidOperatorError("a POVM needs at least one element")
        for e in elems:
            e.setflags(write=False)
        labels = self.labels
        if labels is None:
            labels = tuple(range(len(elems)))
        elif len(labels) != len(elems):
            raise InvalidOperatorError("one label per element required")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)

    def validate(self, tol: float = DEFAULT_TOL) -> "Povm":
        """Raise InvalidOperatorError unless every element is Hermitian and
        positive and the elements resolve the identity within ``tol``."""
        d = self.dim
        total = np.zeros((d, d), dtype=complex)
        for e in self.elements:
            if e.shape != (d, d):
                raise DimensionMismatchError("POVM elements differ in shape")
            if not is_hermitian(e, tol):
                raise InvalidOperatorError("POVM element is not Hermitian")
            smallest = float(np.linalg.eigvalsh(e).min())
            if smallest < -tol:
                raise InvalidOperatorError(
                    f"POVM element has negative eigenvalue {smallest:.3e}")
            total += e
        resid = np.abs(total - np.eye(d)).max()
        if resid > tol:
            raise InvalidOperatorError(
                f"elements do not resolve the identity: residual {resid:.3e}")
        return self

    @classmethod
    def projective(cls, basis_kets, labels=None) -> "Povm":
        """Rank-1 projective measurement onto an orthonormal basis."""
        kets = [np.asarray(k, dtype=complex) for k in basis_kets]
        elems = [np.outer(k, k.conj()) for k in kets]
        return cls(tuple(elems), labels).validate()


def validate_povm(povm: Povm, tol: float = DEFAULT_TOL) -> Povm:
    return povm.validate(tol)


def outcome_probs(povm: Povm, rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Born probabilities Tr(rho Pi_k) for every POVM outcome."""
    povm.validate(tol)
    rho = validate_density(rho, tol)
    if rho.shape[0] != povm.dim:
        raise DimensionMismatchError(
            f"state dimension {rho.shape[0]} vs POVM dimension {povm.dim}")
    return np.array([np.trace(rho @ e).real for e in povm.elements])


@dataclass(frozen=True)
class KrausSet:
    """Measurement transformation operators A_k with sum A_k^dag A_k = 1."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(np.array(a, dtype=complex) for a in self.operators)
        if not ops:
            raise InvalidOperatorError("a Kraus set needs at least one operator")
        for a in ops:
            a.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[1]

    def __len__(self) -> int:
        return len(self.operators)

    def validate(self, tol: float = DEFAULT_TOL) -> "KrausSet":
        d = self.dim
        total = sum(a.conj().T @ a for a in self.operators)
        resid = np.abs(total - np.eye(d)).max()
        if resid > tol:
            raise InvalidOperatorError(
                f"sum A^dag A differs from identity: residual {resid:.3e}")
        return self


def kraus_from_povm(povm: Povm, unitaries=None, tol: float = DEFAULT_TOL) -> KrausSet:
    """Lift a POVM to transformation operators A_k = U_k Pi_k^(1/2).

    ``unitaries`` defaults to the identity for every outcome, which gives
    the minimally disturbing update.  A_k^dag A_k reproduces Pi_k exactly.
    """
    povm.validate(tol)
    d = povm.dim
    if unitaries is None:
        unitaries = [np.eye(d)] * len(povm)
    if len(unitaries) != len(povm):
        raise DimensionMismatchError("one unitary per POVM element required")
    ops = []
    for u, e in zip(unitaries, povm.elements):
        u = np.asarray(u, dtype=complex)
        if np.abs(u.conj().T @ u - np.eye(u.shape[1])).max() > tol:
            raise InvalidOperatorError("rotation supplied for a Kraus lift is not unitary")
        ops.append(u @ herm_sqrt(e, tol))
    return KrausSet(tuple(ops)).validate(tol)


def post_state(a_op, rho, tol: float = DEFAULT_TOL):
    """State update rho -> A rho A^dag / p for a recorded outcome.

    Returns (posterior, probability) where p = Tr(A rho A^dag).  Raises
    ImpossibleOutcomeError when p is below the zero-probability threshold
    rather than dividing noise into an invalid state.
    """
    a_op = np.asarray(a_op, dtype=complex)
    rho = validate_density(rho, tol)
    raw = a_op @ rho @ a_op.conj().T
    p = float(np.trace(raw).real)
    if p < ZERO_PROB:
        raise ImpossibleOutcomeError(
            f"outcome probability {p:.3e} is zero for this state")
    return validate_density(raw / p, tol), p


def unread_update(kraus: KrausSet, rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unselective update rho -> sum_k A_k rho A_k^dag (result not recorded)."""
    kraus.validate(tol)
    rho = validate_density(rho, tol)
    out = sum(a @ rho @ a.conj().T for a in kraus.operators)
    return validate_density(out, tol)


# ---------------------------------------------------------------------------
# dilation to a projective ancilla measurement

@dataclass(frozen=True)
class NaimarkDilation:
    """Unitary + ancilla realisation of a POVM.

    ``joint_unitary`` acts on system (x) ancilla with row-major index
    j * ancilla_dim + k.  Applying it to rho (x) |init><init| and reading
    the ancilla in ``ancilla_basis`` reproduces the POVM statistics.
    """

    ancilla_dim: int
    joint_unitary: np.ndarray
    ancilla_basis: tuple
    ancilla_init: np.ndarray


def naimark_dilate(povm: Povm, tol: float = DEFAULT_TOL) -> NaimarkDilation:
    """Dilate a POVM to a joint unitary and an ancilla readout.

    Builds the isometry V|psi> = sum_k Pi_k^(1/2)|psi> (x) |k> and extends
    its column space to a full unitary by Gram-Schmidt over the remaining
    standard basis directions.
    """
    povm.validate(tol)
    d, n_out = povm.dim, len(povm)
    roots = [herm_sqrt(e, tol) for e in povm.elements]

    iso = np.zeros((d * n_out, d), dtype=complex)
    for k, r in enumerate(roots):
        for j in range(d):
            iso[j * n_out + k, :] = r[j, :]

    basis = [iso[:, j] for j in range(d)]
    for cand in range(d * n_out):
        if len(basis) == d * n_out:
            break
        v = np.zeros(d * n_out, dtype=complex)
        v[cand] = 1.0
        for b in basis:
            v = v - np.vdot(b, v) * b
        # re-orthogonalise once; plain Gram-Schmidt loses accuracy otherwise
        for b in basis:
            v = v - np.vdot(b, v) * b
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            basis.append(v / norm)

    joint = np.zeros((d * n_out, d * n_out), dtype=complex)
    for j in range(d):
        joint[:, j * n_out + 0] = iso[:, j]
    spare_slots = [j * n_out + k for j in range(d) for k in range(1, n_out)]
    for slot, vec in zip(spare_slots, basis[d:]):
        joint[:, slot] = vec
    if np.abs(joint.conj().T @ joint - np.eye(d * n_out)).max() > 1e-8:
        raise InvalidOperatorError("unitary completion of the dilation failed")

    anc_basis = tuple(np.eye(n_out, dtype=complex)[k] for k in range(n_out))
    init = np.zeros(n_out, dtype=complex)
    init[0] = 1.0
    joint.setflags(write=False)
    init.setflags(write=False)
    return NaimarkDilation(n_out, joint, anc_basis, init)


def dilated_probs(dilation: NaimarkDilation, rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Outcome probabilities of the dilated measurement on a system state."""
    rho = validate_density(rho, tol)
    k_dim = dilation.ancilla_dim
    anc0 = np.outer(dilation.ancilla_init, dilation.ancilla_init.conj())
    joint_in = np.kron(rho, anc0)
    u = dilation.joint_unitary
    joint_out = u @ joint_in @ u.conj().T
    d = rho.shape[0]
    probs = []
    for k_vec in dilation.ancilla_basis:
        proj = np.kron(np.eye(d), np.outer(k_vec, k_vec.conj()))
        probs.append(float(np.trace(joint_out @ proj).real))
    return np.array(probs)


# ---------------------------------------------------------------------------
# unitary evolution

def evolve(rho, hamiltonian, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Evolve rho for time t under a Hamiltonian (hbar = 1).

    Solves rho(t) = U rho U^dag with U = exp(-i H t) built from the
    eigendecomposition of H.
    """
    rho = validate_density(rho, tol)
    h = np.asarray(hamiltonian, dtype=complex)
    if not is_hermitian(h, tol):
        raise InvalidOperatorError("Hamiltonian must be Hermitian")
    if h.shape != rho.shape:
        raise DimensionMismatchError(
            f"Hamiltonian shape {h.shape} vs state shape {rho.shape}")
    w, v = np.linalg.eigh(h)
    u = v @ np.diag(np.exp(-1j * w * t)) @ v.conj().T
    return validate_density(u @ rho @ u.conj().T, tol)
