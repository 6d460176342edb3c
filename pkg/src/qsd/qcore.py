"""Linear-algebra substrate for finite-dimensional quantum states.

Kets are 1-D complex numpy arrays, operators are square 2-D arrays.
Bipartite pure states carry their amplitudes as a d_A x d_B matrix, which
makes the Schmidt decomposition a plain SVD and the partial trace a matrix
product.  All containers are frozen dataclasses holding read-only arrays,
so every operation in this package is a pure function and safe to call
from multiple threads.
"""

from dataclasses import dataclass

import numpy as np

#: Absolute entrywise tolerance for every structural check (hermiticity,
#: positivity, normalisation).  Double precision at dimension <= 8 keeps
#: rounding error orders of magnitude below this.
DEFAULT_TOL = 1e-9

#: Relative eigenvalue cutoff separating numerical zeros from genuine
#: support in pseudo-inverses and rank decisions.
DEFAULT_CUTOFF = 1e-12


class DimensionMismatchError(ValueError):
    """Operands act on spaces of different dimension."""


class InvalidOperatorError(ValueError):
    """An operator or state violates a structural requirement."""


# ---------------------------------------------------------------------------
# kets

def as_ket(amplitudes, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coerce ``amplitudes`` to a complex unit vector.

    Raises InvalidOperatorError if the squared norm deviates from 1 by
    more than ``tol``.
    """
    ket = np.array(amplitudes, dtype=complex)
    if ket.ndim != 1 or ket.size < 1:
        raise InvalidOperatorError("a ket must be a non-empty 1-D array")
    norm_sq = float(np.sum(np.abs(ket) ** 2))
    if abs(norm_sq - 1.0) > tol:
        raise InvalidOperatorError(f"ket norm**2 = {norm_sq!r}, expected 1")
    ket.setflags(write=False)
    return ket


def canonical_phase(ket: np.ndarray) -> np.ndarray:
    """Rephase so the first nonzero amplitude is real and non-negative.

    Makes equality tests between kets phase-free.
    """
    ket = np.asarray(ket, dtype=complex)
    for a in ket:
        if abs(a) > 1e-12:
            out = ket * (a.conjugate() / abs(a))
            out.setflags(write=False)
            return out
    return ket


def ket_to_density(ket) -> np.ndarray:
    """|psi><psi| for a ket psi."""
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def ket_fidelity(a, b) -> float:
    """Squared overlap |<a|b>|^2 of two kets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"kets of length {a.size} and {b.size}")
    return float(abs(np.vdot(a, b)) ** 2)


def random_ket(dim: int, rng=None) -> np.ndarray:
    """Draw a Haar-random ket of the given dimension."""
    rng = np.random.default_rng(rng)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return as_ket(v / np.linalg.norm(v))


# ---------------------------------------------------------------------------
# operators and density operators

def is_hermitian(op, tol: float = DEFAULT_TOL) -> bool:
    op = np.asarray(op)
    return op.ndim == 2 and op.shape[0] == op.shape[1] and \
        np.abs(op - op.conj().T).max() <= tol


def validate_density(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Check hermiticity, positivity and unit trace of a density operator.

    Returns the coerced complex array; raises InvalidOperatorError on any
    violation beyond ``tol``.
    """
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidOperatorError("density operator must be a square matrix")
    dev = np.abs(rho - rho.conj().T).max()
    if dev > tol:
        raise InvalidOperatorError(f"not Hermitian: max |rho - rho^dag| = {dev:.3e}")
    smallest = float(np.linalg.eigvalsh(rho).min())
    if smallest < -tol:
        raise InvalidOperatorError(f"not positive: smallest eigenvalue {smallest:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise InvalidOperatorError(f"trace {tr!r}, expected 1")
    rho.setflags(write=False)
    return rho


def expectation(rho, obs) -> complex:
    """Expectation value Tr(rho obs).

    Returned as a complex number; for Hermitian observables the imaginary
    part is zero up to rounding.
    """
    rho = np.asarray(rho, dtype=complex)
    obs = np.asarray(obs, dtype=complex)
    if rho.shape != obs.shape or rho.ndim != 2:
        raise DimensionMismatchError(
            f"operator shapes {rho.shape} and {obs.shape} do not match")
    return complex(np.trace(rho @ obs))


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two kets or two operators."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


# ---------------------------------------------------------------------------
# Pauli operators and the Bloch representation

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
#: sigma_x |0> = |1>, sigma_y |0> = i|1>, sigma_z diagonal (+1, -1).
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
for _p in PAULIS:
    _p.setflags(write=False)


def bloch_to_density(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Qubit density operator (1 + a.sigma)/2 from a Bloch vector."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3,):
        raise InvalidOperatorError("Bloch vector must have 3 real components")
    r = float(np.linalg.norm(a))
    if r > 1.0 + tol:
        raise InvalidOperatorError(f"Bloch vector length {r} exceeds 1")
    rho = 0.5 * (np.eye(2, dtype=complex)
                 + a[0] * PAULI_X + a[1] * PAULI_Y + a[2] * PAULI_Z)
    rho.setflags(write=False)
    return rho


def density_to_bloch(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Bloch components a_k = Tr(sigma_k rho) of a qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DimensionMismatchError("Bloch representation requires a qubit")
    validate_density(rho, tol)
    a = np.array([expectation(rho, p).real for p in PAULIS])
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# bipartite states and the Schmidt decomposition

@dataclass(frozen=True)
class BipartiteState:
    """Pure state of a d_A x d_B system.

    ``amplitudes[j, k]`` is the coefficient of |j>_A |k>_B; the Frobenius
    norm must be 1.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2:
            raise InvalidOperatorError("bipartite amplitudes must be a 2-D array")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > DEFAULT_TOL:
            raise InvalidOperatorError(f"state norm**2 = {norm_sq!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dims(self) -> tuple:
        return self.amplitudes.shape

    @classmethod
    def from_joint_ket(cls, ket, dims) -> "BipartiteState":
        """Build from a flat ket over the product space, row-major in (A, B)."""
        d_a, d_b = dims
        ket = np.asarray(ket, dtype=complex)
        if ket.size != d_a * d_b:
            raise DimensionMismatchError(
                f"ket of length {ket.size} does not factor as {d_a}x{d_b}")
        return cls(ket.reshape(d_a, d_b))

    @classmethod
    def from_product(cls, ket_a, ket_b) -> "BipartiteState":
        return cls(np.outer(np.asarray(ket_a, complex), np.asarray(ket_b, complex)))

    def joint_ket(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Diagonal bi-orthogonal form of a bipartite pure state.

    ``coefficients`` are non-negative, sorted descending, with squares
    summing to 1; ``basis_a`` / ``basis_b`` are matched orthonormal kets.
    Coefficients below the relative rank cutoff are dropped.
    """

    coefficients: np.ndarray
    basis_a: tuple
    basis_b: tuple

    def reconstruct(self) -> BipartiteState:
        """Rebuild the state as sum_j c_j |a_j><b_j|-style amplitudes."""
        amps = sum(c * np.outer(a, b) for c, a, b
                   in zip(self.coefficients, self.basis_a, self.basis_b))
        return BipartiteState(amps)


def _lex_key(vec):
    return tuple((round(float(x.real), 12), round(float(x.imag), 12)) for x in vec)


def schmidt(psi: BipartiteState, cutoff: float = DEFAULT_CUTOFF) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite pure state.

    The returned basis pairs reconstruct the input exactly (no residual
    global phase): each A-side ket is rephased canonically and the
    compensating phase is absorbed into its B-side partner.  Ties between
    equal coefficients are broken by lexicographic order of the A-side
    amplitudes for reproducibility.
    """
    u, s, vh = np.linalg.svd(psi.amplitudes)
    keep = s > cutoff * max(s[0], 1.0) if s.size else s
    s = s[keep]
    cols_a = [u[:, j] for j in range(len(s))]
    rows_b = [vh[j, :] for j in range(len(s))]

    order = sorted(range(len(s)),
                   key=lambda j: (-round(float(s[j]), 12), _lex_key(cols_a[j])))
    coeffs = np.array([s[j] for j in order])
    basis_a, basis_b = [], []
    for j in order:
        a, b = cols_a[j], rows_b[j]
        phase = 1.0 + 0j
        for amp in a:
            if abs(amp) > 1e-12:
                phase = amp / abs(amp)
                break
        basis_a.append(as_ket(a * phase.conjugate()))
        basis_b.append(as_ket(b * phase))
    coeffs.setflags(write=False)
    return SchmidtDecomposition(coeffs, tuple(basis_a), tuple(basis_b))


def partial_trace(psi: BipartiteState, keep) -> np.ndarray:
    """Reduced density operator of one subsystem of a bipartite pure state.

    ``keep`` selects the subsystem that remains: 'A' (or 0) traces out B,
    'B' (or 1) traces out A.
    """
    b = psi.amplitudes
    if keep in ("A", "a", 0):
        rho = b @ b.conj().T
    elif keep in ("B", "b", 1):
        rho = b.T @ b.conj()
    else:
        raise ValueError(f"subsystem selector {keep!r}; use 'A'/'B' or 0/1")
    return validate_density(rho)


def entanglement_entropy(psi: BipartiteState) -> float:
    """Entropy of entanglement in ebits (base-2, with 0 log 0 = 0)."""
    p = schmidt(psi).coefficients ** 2
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


# ---------------------------------------------------------------------------
# Hermitian operator functions

def _herm_eig(op, tol):
    op = np.asarray(op, dtype=complex)
    if not is_hermitian(op, tol):
        raise InvalidOperatorError("operator is not Hermitian")
    return np.linalg.eigh(op)


def herm_sqrt(op, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Positive square root of a Hermitian PSD operator.

    Eigenvalues in [-tol, 0) are clamped to zero; anything lower raises.
    """
    w, v = _herm_eig(op, tol)
    if w.min() < -tol:
        raise InvalidOperatorError(f"not positive: smallest eigenvalue {w.min():.3e}")
    return v @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def herm_inv_sqrt(op, cutoff: float = DEFAULT_CUTOFF, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse square root of a Hermitian PSD operator on its support.

    Eigenvalues at or below ``cutoff`` relative to the largest are treated
    as zero and mapped to zero, so R @ op @ R is the projector onto the
    support.
    """
    w, v = _herm_eig(op, tol)
    if w.min() < -tol:
        raise InvalidOperatorError(f"not positive: smallest eigenvalue {w.min():.3e}")
    scale = max(float(w.max()), 0.0)
    inv = np.where(w > cutoff * max(scale, 1e-300), 1.0 / np.sqrt(np.clip(w, 1e-300, None)), 0.0)
    return v @ np.diag(inv) @ v.conj().T
