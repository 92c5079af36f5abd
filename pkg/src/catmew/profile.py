"""Phase-shifter profiles chi(theta) applied to interferometer arm A."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class PhaseProfile:
    """Constant or piecewise-linear phase shift as a function of ``theta``.

    Sampled profiles interpolate linearly between nodes and clamp to the
    boundary values outside the node range.
    """

    kind: str = "constant"
    constant_chi: float = 0.0
    samples: tuple[tuple[float, float], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind == "constant":
            if not math.isfinite(self.constant_chi):
                raise ValueError("constant_chi must be finite")
        elif self.kind == "sampled":
            if len(self.samples) < 2:
                raise ValueError("sampled profile needs at least 2 nodes")
            thetas = np.array([s[0] for s in self.samples], dtype=float)
            chis = np.array([s[1] for s in self.samples], dtype=float)
            if not (np.all(np.isfinite(thetas)) and np.all(np.isfinite(chis))):
                raise ValueError("profile nodes must be finite")
            if np.any(np.diff(thetas) <= 0):
                raise ValueError("profile thetas must be strictly increasing")
        else:
            raise ValueError(f"unknown profile kind {self.kind!r}")

    @classmethod
    def constant(cls, chi: float) -> "PhaseProfile":
        return cls(kind="constant", constant_chi=float(chi))

    @classmethod
    def sampled(cls, nodes: Sequence[tuple[float, float]]) -> "PhaseProfile":
        return cls(kind="sampled", samples=tuple((float(t), float(c)) for t, c in nodes))

    def __call__(self, theta):
        """Evaluate chi at ``theta`` (scalar or array)."""
        if self.kind == "constant":
            if np.ndim(theta) == 0:
                return self.constant_chi
            return np.full(np.shape(theta), self.constant_chi)
        nodes = np.asarray(self.samples, dtype=float)
        # np.interp clamps to the end values outside the node range
        value = np.interp(theta, nodes[:, 0], nodes[:, 1])
        return float(value) if np.ndim(theta) == 0 else value


def as_profile(chi) -> PhaseProfile:
    """Accept a PhaseProfile or a plain number."""
    if isinstance(chi, PhaseProfile):
        return chi
    return PhaseProfile.constant(chi)
