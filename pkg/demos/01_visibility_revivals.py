"""
Visibility revivals and the imaginary-part problem
===================================================

The mirror branch of the photon swings out to a coherent amplitude and back
once per mechanical period. Interference visibility is largest when it
returns, but the port intensities track the *imaginary* part of the
coherence, which can be close to zero exactly at a revival.
"""

# %%
import numpy as np

from catmew import coherence_ab, output_intensities, visibility_envelope

kappa = 0.5
theta = np.linspace(0, 4 * np.pi, 17)

# %%
# The envelope exp(-kappa^2 (1 - cos theta)) returns to 1 at every multiple
# of 2 pi, while the coherence picks up the Kerr phase.
env = visibility_envelope(kappa, theta)
coh = coherence_ab(kappa, theta)
i_c, i_d = output_intensities(kappa, theta, 0.0)

print(f"{'theta/2pi':>10} {'envelope':>9} {'|coh|':>7} {'arg coh':>8} {'I_C':>7} {'I_D':>7}")
for t, e, c, a, b in zip(theta, env, coh, i_c, i_d):
    print(f"{t / (2 * np.pi):10.3f} {e:9.4f} {abs(c):7.4f} {np.angle(c):8.4f} {a:7.4f} {b:7.4f}")

# %%
# Weak coupling: at the first revival the Kerr phase 2 pi kappa^2 is small,
# so I_C barely moves from 1/2 even though visibility is perfect.
for k in (0.05, 0.1, 0.2):
    a, _ = output_intensities(k, 2 * np.pi, 0.0)
    print(f"kappa={k:4.2f}: I_C at first revival = {a:.5f}")
