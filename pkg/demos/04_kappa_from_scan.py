"""
Measuring the coupling constant by scanning the phase
=====================================================

At a revival the fringe phase is 2 pi n kappa^2. Scanning chi for the
largest I_C - I_D therefore reads off kappa^2, modulo 1/n.
"""

# %%
import numpy as np

from catmew import PhysicalParams, coupling_constant, estimate_kappa, scan_chi

params = PhysicalParams(
    mass_kg=1e-12,
    omega_m=2 * np.pi * 500,
    omega_c=2 * np.pi * 2.99792458e8 / 1.064e-6,
    cavity_length_m=0.5,
)
kappa = coupling_constant(params)
print(f"kappa from hardware numbers: {kappa:.9f}")

# %%
scan = scan_chi(kappa, 2 * np.pi, 1e-3)
print(f"chi* = {scan.chi_star:.6f}, contrast = {scan.contrast_at_star:.6f}")
print(f"kappa^2 mod 1 = {scan.kappa_sq_estimate:.9f}")
print(f"kappa estimate = {estimate_kappa(scan):.9f}")

# %%
# kappa^2 > 1 folds back: the branch hint restores the integer part.
strong = 1.2
scan = scan_chi(strong, 2 * np.pi, 1e-3)
print([round(estimate_kappa(scan, h), 6) for h in range(3)], "true:", strong)
