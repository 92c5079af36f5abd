"""
Checking the closed forms with a Fock-space simulation
======================================================

The oracle integrates the optomechanical Hamiltonian for each arm in a
truncated mirror Fock basis, recombines the arms on the beamsplitter and
traces out the mirror with inner products.
"""

# %%
import numpy as np

from catmew import OracleConfig, beamsplitter_output, compare_with_analytic, evolve_branches
from catmew.fock_oracle import compare_propagators, required_dim

# %%
kappa = 1.0
pair = evolve_branches(kappa, 2 * np.pi)
print("cutoff:", pair.branch_a.dim, "(rule gives", required_dim(kappa), ")")
print("vacuum population of branch A at the revival:", abs(pair.branch_a.amps[0]) ** 2)
print("recovered Kerr phase:", pair.kerr_phase, " expected 2 pi kappa^2 mod 2 pi:",
      np.angle(np.exp(2j * np.pi * kappa**2)))

# %%
rec = beamsplitter_output(evolve_branches(kappa, np.pi), chi=0.0)
print(f"half period: I_C={rec.i_c:.6f} I_D={rec.i_d:.6f} coherence={rec.coherence_ab:.6f}")

# %%
grid = np.linspace(0, 4 * np.pi, 201)
for k in (0.1, 0.5, 1.0, 1.5):
    report = compare_with_analytic(k, grid, np.pi / 2, OracleConfig())
    print(f"kappa={k}: worst oracle-vs-closed-form deviation {report.worst:.2e}")

print("eigendecomposition vs RK4, I_C:", compare_propagators(0.5, grid, steps_per_period=1000))
