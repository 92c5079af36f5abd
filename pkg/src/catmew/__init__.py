"""Single-photon optomechanical Michelson interferometer.

Closed-form detector intensities, coherences and visibility revivals, an
independent truncated-Fock-space oracle, and phase-shifter tuning tools.
"""

from .analytic import (
    DetectionRecord,
    coherence_ab,
    cross_correlation,
    kerr_phase,
    mirror_amplitude,
    output_intensities,
    time_series,
    visibility_envelope,
)
from .fock_oracle import (
    BranchPair,
    ComparisonReport,
    MirrorFockState,
    OracleConfig,
    TruncationError,
    beamsplitter_output,
    coherent_state,
    compare_with_analytic,
    evolve_branches,
)
from .params import HBAR, DomainError, ModelState, PhysicalParams, coupling_constant, dimensionless_time
from .profile import PhaseProfile
from .tuning import ScanResult, estimate_kappa, revival_phase_exact, revival_phase_paper, scan_chi

__version__ = "0.1.0"
