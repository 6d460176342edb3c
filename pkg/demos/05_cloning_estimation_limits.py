"""Limits on copying and estimating unknown states, and how they interlock.

Exact cloning of two known non-orthogonal states, separation, multi-copy
discrimination, universal cloning of a completely unknown qubit and
optimal state estimation are all governed by a handful of closed forms
that reduce to one another in the right limits.
"""

import numpy as np

from qsd import (
    ShrinkChannel,
    apply_shrink,
    clone_probability,
    density_to_bloch,
    estimation_fidelity,
    estimation_shrink,
    haar_qubit_kets,
    ket_to_density,
    multicopy_discrimination,
    separation_probability,
    ucm_fidelity,
    ucm_shrink,
)

s = 0.5
print(f"two known states with overlap {s}:")
print(f"  error-free discrimination success (1 copy):  "
      f"{multicopy_discrimination(1, s):.4f}")
print(f"  with 2 copies: {multicopy_discrimination(2, s):.4f}"
      f"   with 5: {multicopy_discrimination(5, s):.4f}")
print(f"  1 -> 2 exact cloning probability: {clone_probability(1, 2, s):.4f}")
print(f"  separation 0.9 -> 0.8 overlap:    "
      f"{separation_probability(0.9, 0.8):.4f}\n")

print("completely unknown qubit, m copies -> estimation optimum:")
print("  m   mean fidelity   shrink factor")
for m in (1, 2, 3, 5, 10, 100):
    print(f"  {m:3d}   {estimation_fidelity(m):.6f}      {estimation_shrink(m):.6f}")

print("\nuniversal m -> n cloning (per-copy figures):")
print("  m  n   shrink     fidelity   shrink = S_m/S_n?")
for m, n in [(1, 2), (1, 5), (2, 4), (3, 10)]:
    ratio = estimation_shrink(m) / estimation_shrink(n)
    print(f"  {m}  {n:2d}   {ucm_shrink(m, n):.6f}   {ucm_fidelity(m, n):.6f}"
          f"   dev {abs(ucm_shrink(m, n) - ratio):.1e}")

print("\nshrink channel at the single-copy estimation factor 1/3:")
channel = ShrinkChannel(estimation_shrink(1))
kets = haar_qubit_kets(5, np.random.default_rng(12))
for k in kets:
    rho = apply_shrink(channel, k)
    fid = (k.conj() @ rho @ k).real
    a_in = density_to_bloch(ket_to_density(k))
    a_out = density_to_bloch(rho)
    print(f"  |a| {np.linalg.norm(a_in):.3f} -> {np.linalg.norm(a_out):.3f},"
          f"  fidelity {fid:.6f}")
print("(the fidelity never depends on the state: always (1 + 1/3)/2 = 2/3)")
