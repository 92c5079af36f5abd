"""Closed-form observables of the single-photon optomechanical interferometer.

All functions take the dimensionless coupling ``kappa``, mechanical phase
``theta = omega_m t`` and phase-shifter angle ``chi``. They accept scalars
or numpy arrays (broadcast together); scalar inputs give Python scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .params import DomainError
from .profile import PhaseProfile, as_profile

__all__ = [
    "DetectionRecord",
    "kerr_phase",
    "mirror_amplitude",
    "visibility_envelope",
    "coherence_ab",
    "output_intensities",
    "cross_correlation",
    "time_series",
]


@dataclass(frozen=True)
class DetectionRecord:
    """Detector-side observables at one time point.

    ``coherence_ab`` is the mirror-traced off-diagonal element Tr_m rho_AB
    with the arm-A phase shift already applied; ``cross_cd`` is Tr_m rho_CD.
    """

    theta: float
    chi: float
    i_c: float
    i_d: float
    coherence_ab: complex
    cross_cd: complex

    @property
    def cross_dc(self) -> complex:
        return self.cross_cd.conjugate()


def _check(**arrays):
    out = []
    for name, value in arrays.items():
        arr = np.asarray(value, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise DomainError(f"{name} must be finite")
        out.append(arr)
    return out


def _unwrap(x):
    return x.item() if np.ndim(x) == 0 else x


def kerr_phase(kappa, theta):
    """Photon-branch phase kappa^2 (theta - sin theta)."""
    k, t = _check(kappa=kappa, theta=theta)
    return _unwrap(k**2 * (t - np.sin(t)))


def mirror_amplitude(kappa, theta):
    """Coherent amplitude kappa (1 - exp(-i theta)) of the displaced mirror."""
    k, t = _check(kappa=kappa, theta=theta)
    # 1 - e^{-it} = (1 - cos t) + i sin t, written out to keep revivals exact
    return _unwrap(k * ((1.0 - np.cos(t)) + 1j * np.sin(t)))


def visibility_envelope(kappa, theta):
    """exp(-kappa^2 (1 - cos theta)) = exp(-|alpha|^2 / 2)."""
    k, t = _check(kappa=kappa, theta=theta)
    return _unwrap(np.exp(-(k**2) * (1.0 - np.cos(t))))


def coherence_ab(kappa, theta):
    """Tr_m rho_AB = (1/2) exp(i phi - |alpha|^2 / 2)."""
    k, t = _check(kappa=kappa, theta=theta)
    phi = k**2 * (t - np.sin(t))
    env = np.exp(-(k**2) * (1.0 - np.cos(t)))
    return _unwrap(0.5 * env * np.exp(1j * phi))


def output_intensities(kappa, theta, chi=0.0):
    """Port intensities (I_C, I_D) = (1/2)(1 -/+ E sin(phi + chi))."""
    k, t, c = _check(kappa=kappa, theta=theta, chi=chi)
    phi = k**2 * (t - np.sin(t))
    s = np.exp(-(k**2) * (1.0 - np.cos(t))) * np.sin(phi + c)
    i_c = np.clip(0.5 * (1.0 - s), 0.0, 1.0)
    i_d = np.clip(0.5 * (1.0 + s), 0.0, 1.0)
    return _unwrap(i_c), _unwrap(i_d)


def cross_correlation(kappa, theta, chi=0.0):
    """Tr_m rho_CD = (1/2) Re(e^{i chi} Tr_m rho_AB) + i (1/2 - Tr_m rho_AA).

    Tr_m rho_AA is exactly 1/2 for the pure decoherence-free state, so the
    imaginary part vanishes identically on this path.
    """
    k, t, c = _check(kappa=kappa, theta=theta, chi=chi)
    rotated = np.exp(1j * c) * np.asarray(coherence_ab(k, t))
    trace_aa = 0.5
    return _unwrap(0.5 * rotated.real + 1j * (0.5 - trace_aa))


def time_series(
    kappa: float,
    theta_grid: Sequence[float],
    profile: PhaseProfile | float = 0.0,
) -> list[DetectionRecord]:
    """Evaluate every observable on a strictly increasing ``theta_grid``."""
    grid = np.asarray(theta_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("theta_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("theta_grid must be strictly increasing")
    (kappa_arr,) = _check(kappa=kappa)
    if kappa_arr < 0:
        raise DomainError("kappa must be >= 0")
    _check(theta_grid=grid)

    chi = np.asarray(as_profile(profile)(grid), dtype=float)
    i_c, i_d = output_intensities(kappa, grid, chi)
    coh = np.exp(1j * chi) * coherence_ab(kappa, grid)
    cross = cross_correlation(kappa, grid, chi)
    return [
        DetectionRecord(
            theta=float(grid[j]),
            chi=float(chi[j]),
            i_c=float(i_c[j]),
            i_d=float(i_d[j]),
            coherence_ab=complex(coh[j]),
            cross_cd=complex(cross[j]),
        )
        for j in range(grid.size)
    ]
