"""Brute-force verification path in a truncated mirror Fock space.

The single photon is conserved in each arm, so the joint photon-mirror
problem splits into two mirror-only problems:

* photon in arm A: ``H_A = b^dag b - kappa (b + b^dag)``
* photon in arm B: ``H_B = b^dag b``

(energies in units of hbar omega_m, time in units of 1/omega_m). Each mirror
branch starts in the vacuum and is propagated numerically; the recombining
beamsplitter and the partial trace over the mirror are then done with
explicit inner products. Nothing here calls the closed forms in
:mod:`catmew.analytic`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .analytic import DetectionRecord
from . import analytic
from .profile import PhaseProfile, as_profile

NORM_TOL = 1e-10
LEAK_TOL = 1e-8
PROPAGATORS = ("eigendecomposition", "rk4")


class TruncationError(RuntimeError):
    """The Fock cutoff is too small for the requested state or evolution."""

    def __init__(self, message: str, norm_sq: float | None = None, leaked: float | None = None):
        super().__init__(message)
        self.norm_sq = norm_sq
        self.leaked = leaked


class ConfigurationError(ValueError):
    pass


def required_dim(kappa: float) -> int:
    """Cutoff sufficient for the largest excursion |alpha|max = 2 kappa."""
    amax = 2.0 * abs(kappa)
    return math.ceil(amax**2) + 20 + math.ceil(10.0 * amax)


@dataclass(frozen=True)
class OracleConfig:
    dim: int | None = None
    propagator: str = "eigendecomposition"
    steps_per_period: int = 2000

    def __post_init__(self) -> None:
        if self.dim is not None and self.dim < 2:
            raise ConfigurationError(f"dim must be >= 2, got {self.dim}")
        if self.propagator not in PROPAGATORS:
            raise ConfigurationError(
                f"propagator must be one of {PROPAGATORS}, got {self.propagator!r}"
            )
        if self.steps_per_period < 100:
            raise ConfigurationError(
                f"steps_per_period must be >= 100, got {self.steps_per_period}"
            )

    def dim_for(self, kappa: float) -> int:
        return required_dim(kappa) if self.dim is None else self.dim


@dataclass(frozen=True, eq=False)
class MirrorFockState:
    """Mirror state as amplitudes over Fock levels 0..dim-1."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("amps must be a 1-d vector of length >= 2")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def overlap(self, other: "MirrorFockState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amps, other.amps))

    def mean_number(self) -> float:
        n = np.arange(self.dim)
        return float(np.sum(n * np.abs(self.amps) ** 2))

    @classmethod
    def vacuum(cls, dim: int) -> "MirrorFockState":
        amps = np.zeros(dim, dtype=complex)
        amps[0] = 1.0
        return cls(amps)


def coherent_state(alpha: complex, dim: int) -> MirrorFockState:
    """|alpha> truncated to ``dim`` levels, built by amplitude recurrence."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    alpha = complex(alpha)
    amps = np.empty(dim, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(dim - 1):
        amps[n + 1] = amps[n] * alpha / math.sqrt(n + 1)
    state = MirrorFockState(amps)
    norm_sq = state.norm_sq
    if norm_sq < 1.0 - NORM_TOL:
        raise TruncationError(
            f"dim={dim} too small for |alpha|={abs(alpha):.4g}: norm^2={norm_sq:.12f}",
            norm_sq=norm_sq,
        )
    return state


def hamiltonian_bands(kappa: float, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal ``n`` and off-diagonal ``-kappa sqrt(n+1)`` of H_A."""
    n = np.arange(dim, dtype=float)
    return n, -kappa * np.sqrt(n[1:])


def hamiltonian(kappa: float, dim: int) -> np.ndarray:
    d, e = hamiltonian_bands(kappa, dim)
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


def _leak(amps: np.ndarray) -> float:
    return float(np.sum(np.abs(amps[-2:]) ** 2))


class Propagator:
    """Evolves the mirror vacuum under the tridiagonal H_A(kappa).

    ``kappa = 0`` gives the free oscillator H_B.
    """

    def __init__(self, kappa: float, dim: int, method: str = "eigendecomposition",
                 steps_per_period: int = 2000):
        if method not in PROPAGATORS:
            raise ConfigurationError(f"unknown propagator {method!r}")
        self.kappa = float(kappa)
        self.dim = int(dim)
        self.method = method
        self.steps_per_period = int(steps_per_period)
        self.diag, self.off = hamiltonian_bands(self.kappa, self.dim)
        if method == "eigendecomposition":
            h = hamiltonian(self.kappa, self.dim)
            assert np.isrealobj(h) and np.array_equal(h, h.T)
            assert not np.any(np.triu(h, 2)), "H_A must be tridiagonal"
            self.energies, self.vectors = eigh_tridiagonal(np.diag(h), np.diag(h, 1))
            # vacuum expressed in the eigenbasis
            self._vac = self.vectors[0, :].astype(complex)

    def _apply_h(self, psi: np.ndarray) -> np.ndarray:
        out = self.diag * psi
        out[:-1] += self.off * psi[1:]
        out[1:] += self.off * psi[:-1]
        return out

    def _eig(self, theta: float) -> np.ndarray:
        return self.vectors @ (np.exp(-1j * self.energies * theta) * self._vac)

    def _rk4_march(self, psi: np.ndarray, span: float) -> tuple[np.ndarray, float]:
        steps = max(1, math.ceil(abs(span) / (2 * math.pi) * self.steps_per_period))
        h = span / steps
        leaked = _leak(psi)

        def f(y):
            return -1j * self._apply_h(y)

        for _ in range(steps):
            k1 = f(psi)
            k2 = f(psi + 0.5 * h * k1)
            k3 = f(psi + 0.5 * h * k2)
            k4 = f(psi + h * k3)
            psi = psi + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            leaked = max(leaked, _leak(psi))
        return psi, leaked

    def _vacuum(self) -> np.ndarray:
        psi = np.zeros(self.dim, dtype=complex)
        psi[0] = 1.0
        return psi

    def evolve_vacuum(self, theta: float) -> tuple[np.ndarray, float]:
        """Return the evolved amplitudes and the largest edge population seen."""
        if not math.isfinite(theta):
            raise ValueError("theta must be finite")
        if self.method == "rk4":
            return self._rk4_march(self._vacuum(), theta)
        psi = self._eig(theta)
        # probe the path: the edge population must stay small at intermediate times too
        span = min(abs(theta), 2 * math.pi)
        probes = np.linspace(0.0, span, 17)[1:] * (1.0 if theta >= 0 else -1.0)
        leaked = max([_leak(psi)] + [_leak(self._eig(t)) for t in probes])
        return psi, leaked

    def evolve_vacuum_grid(self, grid: np.ndarray):
        """Yield ``(amps, leaked)`` at each point of an increasing grid.

        The stepping propagator marches from one grid point to the next
        instead of restarting from the vacuum.
        """
        if self.method != "rk4":
            for theta in grid:
                yield self.evolve_vacuum(float(theta))
            return
        psi, last = self._vacuum(), 0.0
        for theta in grid:
            psi, leaked = self._rk4_march(psi, float(theta) - last)
            last = float(theta)
            yield psi, leaked


@dataclass(frozen=True)
class BranchPair:
    """Pure-state factorization of the photon-mirror state.

    The joint state is ``weight_a |A> branch_a + weight_b |B> branch_b``.
    ``phase_a`` and ``phase_b`` record the argument of each branch's vacuum
    component, so the Kerr phase is auditable as ``phase_a - phase_b``.
    """

    branch_a: MirrorFockState
    branch_b: MirrorFockState
    weight_a: complex = 1 / math.sqrt(2)
    weight_b: complex = 1 / math.sqrt(2)
    theta: float = float("nan")
    phase_a: float = field(init=False)
    phase_b: float = field(init=False)

    def __post_init__(self) -> None:
        total = abs(self.weight_a) ** 2 + abs(self.weight_b) ** 2
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"branch weights not normalized: {total}")
        object.__setattr__(self, "phase_a", float(np.angle(self.branch_a.amps[0])))
        object.__setattr__(self, "phase_b", float(np.angle(self.branch_b.amps[0])))

    @property
    def kerr_phase(self) -> float:
        """Relative vacuum-component phase of branch A, wrapped to (-pi, pi]."""
        return float(np.angle(np.exp(1j * (self.phase_a - self.phase_b))))


def _make_pair(theta: float, dim: int, result_a, result_b) -> BranchPair:
    (psi_a, leak_a), (psi_b, leak_b) = result_a, result_b
    leaked = max(leak_a, leak_b)
    if leaked > LEAK_TOL:
        raise TruncationError(
            f"edge population {leaked:.3e} exceeds {LEAK_TOL:g} at dim={dim}",
            leaked=leaked,
        )
    pair = BranchPair(MirrorFockState(psi_a), MirrorFockState(psi_b), theta=float(theta))
    for name, br in (("branch_a", pair.branch_a), ("branch_b", pair.branch_b)):
        if abs(br.norm_sq - 1.0) > LEAK_TOL:
            raise ConfigurationError(
                f"{name} norm drifted to {br.norm_sq:.12f}; increase steps_per_period"
            )
    return pair


def _propagators(kappa: float, cfg: OracleConfig) -> tuple[Propagator, Propagator]:
    if not (math.isfinite(kappa) and kappa >= 0):
        raise ValueError(f"kappa must be finite and >= 0, got {kappa!r}")
    dim = cfg.dim_for(kappa)
    return (
        Propagator(kappa, dim, cfg.propagator, cfg.steps_per_period),
        Propagator(0.0, dim, cfg.propagator, cfg.steps_per_period),
    )


def evolve_branches(kappa: float, theta: float, cfg: OracleConfig | None = None) -> BranchPair:
    """Propagate both mirror branches from the vacuum for mechanical phase ``theta``."""
    cfg = cfg or OracleConfig()
    prop_a, prop_b = _propagators(kappa, cfg)
    return _make_pair(theta, prop_a.dim, prop_a.evolve_vacuum(theta), prop_b.evolve_vacuum(theta))


def evolve_grid(kappa: float, theta_grid, cfg: OracleConfig | None = None) -> list[BranchPair]:
    """Branch pairs on a strictly increasing, non-negative theta grid."""
    cfg = cfg or OracleConfig()
    grid = _validate_grid(theta_grid)
    if cfg.propagator == "rk4" and grid[0] < 0:
        raise ValueError("stepping propagator needs a non-negative grid")
    prop_a, prop_b = _propagators(kappa, cfg)
    return [
        _make_pair(theta, prop_a.dim, ra, rb)
        for theta, ra, rb in zip(grid, prop_a.evolve_vacuum_grid(grid), prop_b.evolve_vacuum_grid(grid))
    ]


def _validate_grid(theta_grid) -> np.ndarray:
    grid = np.asarray(theta_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or not np.all(np.isfinite(grid)):
        raise ValueError("theta_grid must be a non-empty finite 1-d sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("theta_grid must be strictly increasing")
    return grid


def _port_kets(pair: BranchPair, chi: float) -> tuple[np.ndarray, np.ndarray]:
    a = pair.weight_a * np.exp(1j * chi) * pair.branch_a.amps
    b = pair.weight_b * pair.branch_b.amps
    root2 = math.sqrt(2.0)
    return (b + 1j * a) / root2, (1j * b + a) / root2


def beamsplitter_output(pair: BranchPair, chi: float = 0.0) -> DetectionRecord:
    """Recombine the arms on the beamsplitter and trace out the mirror.

    The arm-A branch picks up ``exp(i chi)`` before recombination. Port
    intensities are squared norms of the mirror kets attached to |C> and
    |D>. The cross-correlation follows the two-port relation
    ``Tr rho_CD = Re(Tr rho_AB)/2 + i (1/2 - Tr rho_AA)`` using the
    oracle's own coherence and arm-A population.
    """
    c_ket, d_ket = _port_kets(pair, chi)
    i_c = float(np.vdot(c_ket, c_ket).real)
    i_d = float(np.vdot(d_ket, d_ket).real)
    if abs(i_c + i_d - 1.0) > LEAK_TOL:
        raise TruncationError(f"port probabilities sum to {i_c + i_d:.12f}")
    coherence = (
        np.conj(pair.weight_b) * pair.weight_a * np.exp(1j * chi)
        * pair.branch_b.overlap(pair.branch_a)
    )
    trace_aa = abs(pair.weight_a) ** 2 * pair.branch_a.norm_sq
    cross = 0.5 * coherence.real + 1j * (0.5 - trace_aa)
    return DetectionRecord(
        theta=pair.theta, chi=float(chi), i_c=i_c, i_d=i_d,
        coherence_ab=complex(coherence), cross_cd=complex(cross),
    )


def port_trace_cd(pair: BranchPair, chi: float = 0.0) -> complex:
    """Tr_m rho_CD taken directly as <d|c> from the port kets.

    For equal-weight unit-norm branches this is ``Re(Tr rho_AB) + i
    (Tr rho_AA - 1/2)``, twice the real part reported in
    :attr:`DetectionRecord.cross_cd`.
    """
    c_ket, d_ket = _port_kets(pair, chi)
    return complex(np.vdot(d_ket, c_ket))


@dataclass(frozen=True)
class ComparisonReport:
    """Oracle-minus-analytic deviations over a theta grid."""

    theta: np.ndarray
    deviations: dict[str, np.ndarray]

    FIELDS = ("i_c", "i_d", "re_coh", "im_coh", "re_cross", "im_cross")

    @property
    def max_deviation(self) -> dict[str, float]:
        return {k: float(np.max(v)) for k, v in self.deviations.items()}

    @property
    def worst(self) -> float:
        return max(self.max_deviation.values())


def compare_with_analytic(
    kappa: float,
    theta_grid,
    chi: float | PhaseProfile = 0.0,
    cfg: OracleConfig | None = None,
) -> ComparisonReport:
    """Run the oracle and the closed forms side by side on ``theta_grid``."""
    cfg = cfg or OracleConfig()
    grid = _validate_grid(theta_grid)
    profile = as_profile(chi)
    reference = analytic.time_series(kappa, grid, profile)
    pairs = evolve_grid(kappa, grid, cfg)

    devs = {k: np.empty(grid.size) for k in ComparisonReport.FIELDS}
    for j, (pair, ref) in enumerate(zip(pairs, reference)):
        rec = beamsplitter_output(pair, ref.chi)
        devs["i_c"][j] = abs(rec.i_c - ref.i_c)
        devs["i_d"][j] = abs(rec.i_d - ref.i_d)
        devs["re_coh"][j] = abs(rec.coherence_ab.real - ref.coherence_ab.real)
        devs["im_coh"][j] = abs(rec.coherence_ab.imag - ref.coherence_ab.imag)
        devs["re_cross"][j] = abs(rec.cross_cd.real - ref.cross_cd.real)
        devs["im_cross"][j] = abs(rec.cross_cd.imag - ref.cross_cd.imag)
    return ComparisonReport(theta=grid, deviations=devs)


def compare_propagators(
    kappa: float,
    theta_grid,
    chi: float = 0.0,
    dim: int | None = None,
    steps_per_period: int = 1000,
) -> float:
    """Largest |I_C| disagreement between the eigendecomposition and RK4 paths."""
    eig = evolve_grid(kappa, theta_grid, OracleConfig(dim=dim))
    rk4 = evolve_grid(
        kappa, theta_grid,
        OracleConfig(dim=dim, propagator="rk4", steps_per_period=steps_per_period),
    )
    return max(
        abs(beamsplitter_output(p, chi).i_c - beamsplitter_output(q, chi).i_c)
        for p, q in zip(eig, rk4)
    )
