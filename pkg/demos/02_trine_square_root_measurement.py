"""The trine ensemble and its optimal square-root measurement.

Three real qubit states at 120 degrees cannot be told apart by any
projective measurement with three outcomes; the square-root POVM gets the
error probability down to its floor of 1/3.  A dilation shows the same
statistics arising from a unitary on system + 3-level ancilla.
"""

import numpy as np

from qsd import (
    Ensemble,
    certify_optimality,
    dilated_probs,
    error_probability,
    ket_to_density,
    naimark_dilate,
    outcome_probs,
    random_ket,
    square_root_measurement,
    srm_error,
    trine_states,
)

states = trine_states()
print("trine states:")
for j, s in enumerate(states, start=1):
    print(f"  psi_{j} = ({s[0].real:+.4f}, {s[1].real:+.4f})")

total = sum(ket_to_density(s) for s in states)
print(f"\nsum of projectors = (3/2) identity? max dev "
      f"{np.abs(total - 1.5 * np.eye(2)).max():.2e}")

povm = square_root_measurement(states)
print("\nsquare-root POVM elements are (2/3)|psi_j><psi_j|:")
for e, s in zip(povm.elements, states):
    print(f"  max dev {np.abs(e - (2 / 3) * ket_to_density(s)).max():.2e}")

ens = Ensemble.uniform(states)
print(f"\nerror probability achieved: {error_probability(ens, povm):.12f}")
print(f"closed-form value:          {srm_error(states):.12f}")

cert = certify_optimality(ens, povm)
print(f"optimality certificate: passed={cert.passed}")
print(f"  lagrange operator =\n{np.round(cert.gamma.real, 6)}")

print("\noutcome probabilities for input psi_1 (should be 2/3, 1/6, 1/6):")
print(" ", np.round(outcome_probs(povm, ket_to_density(states[0])), 6))

dilation = naimark_dilate(povm)
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(50):
    rho = ket_to_density(random_ket(2, rng))
    dev = np.abs(dilated_probs(dilation, rho) - outcome_probs(povm, rho)).max()
    worst = max(worst, dev)
print(f"\nNaimark dilation with ancilla dimension {dilation.ancilla_dim}:")
print(f"  worst statistics deviation over 50 random states: {worst:.2e}")
