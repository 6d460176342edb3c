"""Toolkit for quantum state discrimination.

Closed-form optima and constructions for minimum-error and unambiguous
discrimination, entanglement concentration, cloning and estimation
limits, with independent brute-force oracles and a seeded Monte Carlo
measurement simulator.
"""

from .qcore import (
    DEFAULT_CUTOFF,
    DEFAULT_TOL,
    BipartiteState,
    DimensionMismatchError,
    InvalidOperatorError,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PAULIS,
    SchmidtDecomposition,
    as_ket,
    bloch_to_density,
    canonical_phase,
    density_to_bloch,
    entanglement_entropy,
    expectation,
    herm_inv_sqrt,
    herm_sqrt,
    ket_fidelity,
    ket_to_density,
    partial_trace,
    random_ket,
    schmidt,
    tensor,
    validate_density,
)
from .povm import (
    ImpossibleOutcomeError,
    KrausSet,
    NaimarkDilation,
    Povm,
    dilated_probs,
    evolve,
    kraus_from_povm,
    naimark_dilate,
    outcome_probs,
    post_state,
    unread_update,
    validate_povm,
)
from .minerror import (
    Ensemble,
    OptimalityReport,
    SymmetricFamily,
    TwoStateFamily,
    bayes_cost,
    brute_force_two_state,
    certify_optimality,
    channel_matrix,
    error_probability,
    helstrom_bound,
    helstrom_measurement,
    make_symmetric,
    square_root_measurement,
    srm_error,
    trine_states,
)
from .unambiguous import (
    InfeasibleSuccessError,
    InterferometerModel,
    LinearDependenceError,
    UnambiguousPovm,
    build_interferometer,
    failure_posterior,
    idp_bound,
    interferometer_sim,
    reciprocal_states,
    symmetric_unambiguous_optimum,
    unambiguous_povm,
)
from .entangle import (
    ConcentrationPlan,
    OrthogonaliserReport,
    RankDeficiencyError,
    build_plan,
    concentrate,
    verify_orthogonaliser,
)
from .bounds import (
    ShrinkChannel,
    apply_shrink,
    clone_probability,
    estimation_fidelity,
    estimation_shrink,
    haar_qubit_kets,
    multicopy_discrimination,
    separation_probability,
    ucm_fidelity,
    ucm_shrink,
)
from .mcsim import (
    SimConfig,
    SimReport,
    run_discrimination,
    run_unambiguous,
    sample_categorical,
    sweep_theta,
    trial_uniforms,
)

__version__ = "0.1.0"
