"""Phase-shifter tuning for visibility revivals and coupling estimation.

At the n-th revival (theta = 2 pi n) the mirror is back in its ground state
and the port contrast ``I_C - I_D = -sin(phi + chi)`` has unit amplitude, with
``phi = 2 pi n kappa^2``. Tuning chi so that ``sin(phi + chi) = -1`` sends
the photon to port C with certainty. Scanning chi for the largest
``I_C - I_D`` and reading off the optimum therefore measures
``n kappa^2`` modulo 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analytic
from .profile import PhaseProfile, as_profile

__all__ = [
    "PhaseProfile",
    "as_profile",
    "ScanResult",
    "revival_phase_paper",
    "revival_phase_exact",
    "scan_chi",
    "estimate_kappa",
    "revival_index",
]

TWO_PI = 2.0 * math.pi
REVIVAL_TOL = 1e-6


def _wrap(angle: float) -> float:
    value = math.fmod(angle, TWO_PI)
    if value < 0:
        value += TWO_PI
    # fmod can land on 2 pi after the shift for tiny negative inputs
    return 0.0 if value >= TWO_PI else value


def _check_n(n: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"revival index n must be a positive integer, got {n!r}")


def revival_phase_paper(n: int, kappa: float) -> float:
    """chi_n = 2 pi ((2n + 1)/4 - kappa^2), reduced into [0, 2 pi).

    Only the n = 1 rule puts the revival on a full-contrast fringe; for
    n >= 2 a residual phase 2 pi (n - 1) kappa^2 remains. Use
    :func:`revival_phase_exact` for the general case.
    """
    _check_n(n)
    return _wrap(TWO_PI * ((2 * n + 1) / 4.0 - kappa**2))


def revival_phase_exact(n: int, kappa: float) -> float:
    """Phase giving ``sin(phi(2 pi n) + chi) = -1``, i.e. I_C = 1 at the n-th revival."""
    _check_n(n)
    return _wrap(1.5 * math.pi - TWO_PI * n * kappa**2)


def revival_index(theta: float, tol: float = REVIVAL_TOL) -> int | None:
    """``n`` if ``theta`` is within ``tol`` of ``2 pi n`` with n >= 1, else None."""
    n = round(theta / TWO_PI)
    if n >= 1 and abs(theta - TWO_PI * n) <= tol:
        return int(n)
    return None


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a chi scan.

    ``contrast_at_star`` is ``I_C - I_D`` at the refined optimum.
    ``kappa_sq_estimate`` is kappa^2 modulo ``1/revival_n`` (modulo 1 at the
    first revival) and is only meaningful when ``estimate_valid``.
    """

    chi_star: float
    contrast_at_star: float
    kappa_sq_estimate: float
    grid_step: float
    estimate_valid: bool
    revival_n: int | None
    theta: float
    chi_grid: np.ndarray
    contrast: np.ndarray


IntensityFn = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def scan_chi(
    kappa: float,
    theta: float,
    grid_step: float,
    intensities: IntensityFn | None = None,
) -> ScanResult:
    """Locate the phase maximizing ``I_C - I_D`` at fixed ``theta``.

    The uniform grid over [0, 2 pi) is followed by one parabolic
    refinement through the best point and its two neighbours.
    ``intensities`` maps an array of chi values to ``(I_C, I_D)``; by default
    the closed-form model at (kappa, theta) is used.
    """
    if not (0.0 < grid_step <= 0.1):
        raise ValueError(f"grid_step must lie in (0, 0.1], got {grid_step!r}")
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    if intensities is None:
        def intensities(chi):
            return analytic.output_intensities(kappa, theta, chi)

    def contrast_of(chi):
        i_c, i_d = intensities(np.asarray(chi, dtype=float))
        return np.asarray(i_c) - np.asarray(i_d)

    chi_grid = np.arange(0.0, TWO_PI, grid_step)
    contrast = contrast_of(chi_grid)
    best = int(np.argmax(contrast))  # first occurrence: ties go to the smallest chi
    x0 = chi_grid[best]
    f_minus, f0, f_plus = contrast_of(np.array([x0 - grid_step, x0, x0 + grid_step]))
    denom = f_minus - 2.0 * f0 + f_plus
    shift = 0.0
    if denom < 0:
        shift = 0.5 * grid_step * (f_minus - f_plus) / denom
        shift = max(-grid_step, min(grid_step, shift))
    chi_star = _wrap(x0 + shift)
    contrast_star = float(contrast_of(np.array([chi_star]))[0])
    if contrast_star < f0:
        chi_star, contrast_star = _wrap(x0), float(f0)

    n = revival_index(theta)
    if n is None:
        kappa_sq, valid = float("nan"), False
    else:
        # optimum sits at phi + chi = 3 pi / 2 with phi = 2 pi n kappa^2
        fraction = (0.75 - chi_star / TWO_PI) % 1.0
        kappa_sq, valid = fraction / n, True
    return ScanResult(
        chi_star=chi_star,
        contrast_at_star=contrast_star,
        kappa_sq_estimate=kappa_sq,
        grid_step=float(grid_step),
        estimate_valid=valid,
        revival_n=n,
        theta=float(theta),
        chi_grid=chi_grid,
        contrast=contrast,
    )


def estimate_kappa(scan: ScanResult, branch_hint: int = 0) -> float:
    """Coupling constant from a revival scan.

    chi is 2 pi periodic, so one scan at the n-th revival fixes
    ``n kappa^2`` only modulo 1. ``branch_hint`` selects the integer part:
    ``kappa = sqrt((n * kappa_sq_estimate + branch_hint) / n)``.
    """
    if not scan.estimate_valid:
        raise ValueError("scan was not taken at a revival time; no kappa estimate")
    if int(branch_hint) != branch_hint or branch_hint < 0:
        raise ValueError(f"branch_hint must be a non-negative integer, got {branch_hint!r}")
    n = scan.revival_n or 1
    return math.sqrt((n * scan.kappa_sq_estimate + branch_hint) / n)
