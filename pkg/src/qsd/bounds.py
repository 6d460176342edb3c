"""Closed-form limits for multi-copy discrimination, cloning and estimation.

These are scalar calculators: the optimal values and the consistency
identities tying them together, not the optimal transformations
themselves.  A shrink channel gives the universal estimation / cloning
output its operational meaning on qubits.
"""

from dataclasses import dataclass

import numpy as np

from .qcore import DimensionMismatchError, ket_to_density


def _check_copies(m: int, name: str = "M") -> int:
    if int(m) != m or m < 1:
        raise ValueError(f"{name} must be an integer >= 1, got {m!r}")
    return int(m)


def _check_overlap(s: float, name: str = "overlap") -> float:
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"{name} {s} outside [0, 1]")
    return float(s)


def multicopy_discrimination(m: int, overlap: float) -> float:
    """Best unambiguous success probability given m copies: 1 - overlap^m."""
    m = _check_copies(m)
    overlap = _check_overlap(overlap)
    return 1.0 - overlap ** m


def clone_probability(m: int, n: int, overlap: float) -> float:
    """Best probability of turning m exact copies into n, n >= m.

    (1 - overlap^m) / (1 - overlap^n); equal to 1 at m = n and undefined
    for identical states when m < n.
    """
    m = _check_copies(m, "M")
    n = _check_copies(n, "N")
    if n < m:
        raise ValueError(f"need N >= M, got M={m}, N={n}")
    overlap = _check_overlap(overlap)
    if m == n:
        return 1.0
    if overlap == 1.0:
        raise ValueError("cloning probability is undefined at overlap 1 with M < N")
    return (1.0 - overlap ** m) / (1.0 - overlap ** n)


def separation_probability(overlap_initial: float, overlap_final: float) -> float:
    """Best probability of driving the overlap of two equiprobable states down.

    (1 - s_initial) / (1 - s_final) for s_final < s_initial; at
    s_final = 0 this is the error-free discrimination success, and for
    s_initial = s^M, s_final = s^N it is the cloning probability.
    """
    s1 = _check_overlap(overlap_initial, "initial overlap")
    s2 = _check_overlap(overlap_final, "final overlap")
    if s2 >= s1:
        raise ValueError(f"final overlap {s2} must be below initial overlap {s1}")
    return (1.0 - s1) / (1.0 - s2)


def estimation_fidelity(m: int) -> float:
    """Best mean fidelity of guessing a uniformly random qubit from m copies."""
    m = _check_copies(m)
    return (m + 1.0) / (m + 2.0)


def estimation_shrink(m: int) -> float:
    """Bloch-vector shrinking factor of the optimal m-copy estimator."""
    m = _check_copies(m)
    return m / (m + 2.0)


def ucm_shrink(m: int, n: int) -> float:
    """Shrinking factor of the optimal universal m -> n cloner."""
    m = _check_copies(m, "M")
    n = _check_copies(n, "N")
    if n < m:
        raise ValueError(f"need N >= M, got M={m}, N={n}")
    return m * (n + 2.0) / (n * (m + 2.0))


def ucm_fidelity(m: int, n: int) -> float:
    """Per-copy fidelity of the optimal universal m -> n cloner."""
    m = _check_copies(m, "M")
    n = _check_copies(n, "N")
    if n < m:
        raise ValueError(f"need N >= M, got M={m}, N={n}")
    return (m + n + m * n) / (n * (m + 2.0))


@dataclass(frozen=True)
class ShrinkChannel:
    """Isotropic contraction of the Bloch vector by a factor in [0, 1]."""

    factor: float

    def __post_init__(self):
        if not 0.0 <= self.factor <= 1.0:
            raise ValueError(f"shrinking factor {self.factor} outside [0, 1]")


def apply_shrink(channel, psi) -> np.ndarray:
    """Shrunk qubit state (1 - S)/2 + S |psi><psi|.

    Its fidelity with |psi> is (1 + S)/2 for every input, and on the Bloch
    sphere the pure-state vector is scaled by S with direction unchanged.
    """
    factor = channel.factor if isinstance(channel, ShrinkChannel) else ShrinkChannel(float(channel)).factor
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise DimensionMismatchError("shrink channel is defined for qubit kets")
    return 0.5 * (1.0 - factor) * np.eye(2, dtype=complex) + factor * ket_to_density(psi)


def haar_qubit_kets(count: int, rng=None) -> np.ndarray:
    """Kets drawn uniformly on the Bloch sphere, one per row.

    Uses the two-angle parameterisation with the area-correct density:
    cos(polar angle) uniform in [-1, 1], azimuth uniform in [0, 2 pi).
    """
    rng = np.random.default_rng(rng)
    cos_polar = 1.0 - 2.0 * rng.random(count)
    azimuth = 2.0 * np.pi * rng.random(count)
    half = 0.5 * np.arccos(cos_polar)
    kets = np.empty((count, 2), dtype=complex)
    kets[:, 0] = np.cos(half)
    kets[:, 1] = np.exp(1j * azimuth) * np.sin(half)
    return kets
