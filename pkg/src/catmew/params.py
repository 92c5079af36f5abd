"""Hardware parameters and the dimensionless optomechanical coupling.

Everything downstream of this module works in dimensionless units:
coupling ``kappa``, mechanical phase ``theta = omega_m * t`` and the
phase-shifter angle ``chi``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

#: Reduced Planck constant, J s (2018 CODATA, exact).
HBAR = 1.054571817e-34


class DomainError(ValueError):
    """An input lies outside the domain of a physical formula."""


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def _require_positive(**values: float) -> None:
    _require_finite(**values)
    for name, value in values.items():
        if value <= 0:
            raise DomainError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Mirror mass (kg), mechanical and optical angular frequencies (rad/s),
    and Fabry-Perot cavity length (m)."""

    mass_kg: float
    omega_m: float
    omega_c: float
    cavity_length_m: float

    def __post_init__(self) -> None:
        _require_positive(
            mass_kg=self.mass_kg,
            omega_m=self.omega_m,
            omega_c=self.omega_c,
            cavity_length_m=self.cavity_length_m,
        )
        if self.omega_c <= self.omega_m:
            warnings.warn(
                f"omega_c ({self.omega_c:g}) does not exceed omega_m ({self.omega_m:g})",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def kappa(self) -> float:
        return coupling_constant(self)


@dataclass(frozen=True)
class ModelState:
    """Dimensionless model inputs at one instant."""

    kappa: float
    theta: float
    chi: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(kappa=self.kappa, theta=self.theta, chi=self.chi)
        if self.kappa < 0:
            raise DomainError(f"kappa must be >= 0, got {self.kappa!r}")


def coupling_constant(p: PhysicalParams) -> float:
    """kappa = (omega_c / omega_m) * sqrt(hbar / (2 M omega_m)) / L."""
    _require_positive(
        mass_kg=p.mass_kg,
        omega_m=p.omega_m,
        omega_c=p.omega_c,
        cavity_length_m=p.cavity_length_m,
    )
    zero_point = math.sqrt(HBAR / (2.0 * p.mass_kg * p.omega_m))
    return (p.omega_c / p.omega_m) * (zero_point / p.cavity_length_m)


def dimensionless_time(omega_m: float, t_seconds: float) -> float:
    """Mechanical phase accumulated after ``t_seconds``."""
    _require_positive(omega_m=omega_m)
    _require_finite(t_seconds=t_seconds)
    return omega_m * t_seconds
