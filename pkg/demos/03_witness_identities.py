"""Spectral anatomy of the normalized witness and its contract identities.

The witness (P - lambda I)/(n - lambda D) has a flat two-level spectrum, unit
trace, and nonnegative expectation on every separable state; its most negative
expectation over the catalog states is achieved by the complement state.
"""

import numpy as np

from pptball import (
    DensityMatrix,
    SamplerConfig,
    build_witness,
    get_upb,
    minimum_overlap,
    omega_state,
    sample_hs_density,
    sample_random_product_separable,
    spectral_split,
    witness_value,
)

upb = get_upb("tiles")
lam = minimum_overlap(upb)
w = build_witness(upb, lam)
omega = omega_state(upb)
n, d = upb.cardinality, upb.total_dim

split = spectral_split(w)
print("witness spectrum (ascending):")
print(" ", np.round(split.decomposition.eigenvalues, 10))
print(f"positive count p = {split.p_count}, negative count = {split.n_neg_count}")
print(f"Tr W        = {w.op.trace:.15f}")
print(f"Tr W+       = {w.pos_part_trace:.15f} "
      f"(closed form n(1-lambda)/(n-lambda D) = {n*(1-lam.value)/(n-lam.value*d):.15f})")
print(f"Tr W+ - Tr W- = {w.pos_part_trace - w.neg_part_trace:.15f}")
print(f"max positive eigenvalue = {w.max_pos_eigenvalue:.15f} "
      f"(= Tr W+/p for this flat spectrum)")

print()
print(f"Tr(W Omega) = {witness_value(w, omega):.15f} "
      f"(closed form -lambda/(n-lambda D) = {-lam.value/(n-lam.value*d):.15f})")
sigma_min = lam.minimizer.to_density(upb.structure)
print(f"Tr(W sigma_min) = {witness_value(w, sigma_min):.2e} (zero-crossing direction)")
mixed = DensityMatrix.maximally_mixed(upb.structure)
print(f"Tr(W I/D)   = {witness_value(w, mixed):.15f} (= 1/D)")

cfg = SamplerConfig(11, 2000)
vals = [witness_value(w, sample_hs_density(upb.structure, cfg, trial=t))
        for t in range(2000)]
print()
print(f"2000 random states: expectations in "
      f"[{min(vals):.6f}, {max(vals):.6f}] vs bounds "
      f"[-{w.neg_part_trace:.6f}, {w.pos_part_trace:.6f}]")
sep_cfg = SamplerConfig(12, 2000)
sep_vals = [
    witness_value(w, sample_random_product_separable(upb.structure, 3, sep_cfg, trial=t))
    for t in range(2000)
]
print(f"2000 separable states: minimum expectation {min(sep_vals):.3e} (must be >= 0)")
