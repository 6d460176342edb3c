"""Error-free discrimination with inconclusive outcomes.

Shows the two-state optimum (inconclusive probability equal to the state
overlap), the reciprocal-state POVM behind it, the interferometer that
realises it with beamsplitters, what is left of the states after a
failure, and the closed-form optimum for a symmetric three-state family.
"""

import numpy as np

from qsd import (
    TwoStateFamily,
    failure_posterior,
    idp_bound,
    interferometer_sim,
    build_interferometer,
    ket_fidelity,
    make_symmetric,
    reciprocal_states,
    symmetric_unambiguous_optimum,
    unambiguous_povm,
)

theta = np.pi / 6
fam = TwoStateFamily(theta)
overlap = fam.overlap
print(f"two states at theta = pi/6: overlap {overlap:.4f}")
print(f"minimum inconclusive probability: {idp_bound(overlap):.4f}")
print(f"best error-free success per state: {1 - idp_bound(overlap):.4f}\n")

rec_plus, rec_minus = reciprocal_states(fam.states)
print("reciprocal states (each orthogonal to the other input):")
print(f"  for psi+: ({rec_plus[0].real:.4f}, {rec_plus[1].real:+.4f})")
print(f"  for psi-: ({rec_minus[0].real:.4f}, {rec_minus[1].real:+.4f})")

upovm = unambiguous_povm(fam.states, 1 - idp_bound(overlap))
print(f"\ninconclusive element eigenvalues: "
      f"{np.round(np.linalg.eigvalsh(upovm.inconclusive), 6)}")
print("(smallest is 0: the optimum saturates positivity)\n")

model = build_interferometer(theta)
print(f"interferometer transmission t = {model.transmission:.6f} "
      f"(sqrt(cos 2 theta)/cos theta)")
for which, table in interferometer_sim(theta).items():
    print(f"  input {which}: D+ {table['D+']:.4f}  D- {table['D-']:.4f}  "
          f"D? {table['D?']:.4f}")
print("(the wrong detector never fires)\n")

post_plus, post_minus = failure_posterior(fam.states, upovm)
print(f"after a failure the two posteriors coincide: fidelity "
      f"{ket_fidelity(post_plus, post_minus):.9f}\n")

fam3 = make_symmetric(np.sqrt([0.5, 0.25, 0.25]))
p_success, p_fail = symmetric_unambiguous_optimum(fam3)
print("symmetric 3-state family with weights (1/2, 1/4, 1/4):")
print(f"  optimal per-state success {p_success:.4f}, inconclusive {p_fail:.4f}")
unambiguous_povm(fam3.states, p_success)
print("  POVM at the optimum is feasible; any higher demand is rejected")
