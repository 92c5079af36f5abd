"""``catmew`` command-line front end.

Usage::

    catmew run.cfg [--output out.csv] [--tolerance 1e-6]

The config file is flat ``key = value`` text, one pair per line, ``#``
comments. Angles are radians unless the key ends in ``_deg``. Output is
comma-delimited with a ``#`` header echoing the resolved config.

Exit codes: 0 success, 2 config error, 3 numerical failure or tolerance
breach, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import analytic, fock_oracle, tuning
from .params import PhysicalParams, coupling_constant
from .profile import PhaseProfile

logger = logging.getLogger("catmew")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
MODES = ("simulate", "scan-chi", "revival", "estimate-kappa", "oracle-compare")
PHYSICAL_KEYS = ("mass_kg", "omega_m", "omega_c", "cavity_length_m")
ANGLE_KEYS = ("theta_start", "theta_end", "chi", "scan_theta")

_FLOAT_KEYS = {"kappa", "tolerance", "scan_step", *PHYSICAL_KEYS, *ANGLE_KEYS}
_INT_KEYS = {"points", "oracle_dim", "oracle_steps_per_period", "revival_max_n", "branch_hint"}
_STR_KEYS = {"mode", "oracle_propagator", "output_path", "chi_samples"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS


class ConfigError(ValueError):
    """Invalid run configuration; carries the offending field and line."""

    def __init__(self, field_name: str, message: str, line: int | None = None):
        self.field = field_name
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{field_name}: {message}")


@dataclass(frozen=True)
class RunConfig:
    mode: str
    kappa: float | None = None
    physical: PhysicalParams | None = None
    theta_start: float = 0.0
    theta_end: float = 4 * math.pi
    points: int = 201
    chi: PhaseProfile = field(default_factory=lambda: PhaseProfile.constant(0.0))
    oracle: fock_oracle.OracleConfig | None = None
    output_path: str | None = None
    revival_max_n: int = 3
    scan_step: float = 1e-3
    scan_theta: float = 2 * math.pi
    branch_hint: int = 0
    tolerance: float = 1e-6

    @property
    def resolved_kappa(self) -> float:
        if self.kappa is not None:
            return self.kappa
        return coupling_constant(self.physical)

    def theta_grid(self) -> np.ndarray:
        return np.linspace(self.theta_start, self.theta_end, self.points)

    def header_items(self) -> list[tuple[str, str]]:
        """Resolved config as ordered (key, text) pairs for the output header."""
        items = [("mode", self.mode), ("kappa", fmt(self.resolved_kappa))]
        if self.physical is not None:
            items += [(k, fmt(getattr(self.physical, k))) for k in PHYSICAL_KEYS]
        items += [
            ("theta_start", fmt(self.theta_start)),
            ("theta_end", fmt(self.theta_end)),
            ("points", str(self.points)),
        ]
        if self.chi.kind == "constant":
            items.append(("chi", fmt(self.chi.constant_chi)))
        else:
            items.append(("chi_samples", ", ".join(f"{fmt(t)}:{fmt(c)}" for t, c in self.chi.samples)))
        if self.oracle is not None:
            items += [
                ("oracle_dim", str(self.oracle.dim_for(self.resolved_kappa))),
                ("oracle_propagator", self.oracle.propagator),
                ("oracle_steps_per_period", str(self.oracle.steps_per_period)),
            ]
        items += [
            ("revival_max_n", str(self.revival_max_n)),
            ("scan_step", fmt(self.scan_step)),
            ("scan_theta", fmt(self.scan_theta)),
            ("branch_hint", str(self.branch_hint)),
            ("tolerance", fmt(self.tolerance)),
        ]
        return items


def fmt(x: float) -> str:
    """Fixed 17-significant-digit float formatting."""
    return format(float(x), ".17g")


def _convert(key: str, raw: str, line: int):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            value = float(raw)
            if not math.isfinite(value):
                raise ConfigError(key, f"must be finite, got {raw!r}", line)
            return value
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        kind = "integer" if key in _INT_KEYS else "number"
        raise ConfigError(key, f"expected {kind}, got {raw!r}", line) from None
    return raw


def _parse_samples(raw: str, line: int) -> PhaseProfile:
    nodes = []
    for chunk in raw.split(","):
        parts = chunk.split(":")
        if len(parts) != 2:
            raise ConfigError("chi_samples", f"expected theta:chi pairs, got {chunk.strip()!r}", line)
        try:
            nodes.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ConfigError("chi_samples", f"non-numeric node {chunk.strip()!r}", line) from None
    try:
        return PhaseProfile.sampled(nodes)
    except ValueError as exc:
        raise ConfigError("chi_samples", str(exc), line) from None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a flat key=value config document."""
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        stripped = raw_line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError("<syntax>", f"expected key=value, got {stripped!r}", lineno)
        key, raw = (s.strip() for s in stripped.split("=", 1))
        if key == "seed":
            raise ConfigError("seed", "not accepted; runs are fully deterministic", lineno)
        deg = key.endswith("_deg") and key[: -len("_deg")] in ANGLE_KEYS
        name = key[: -len("_deg")] if deg else key
        if name not in KNOWN_KEYS:
            raise ConfigError(key, "unknown key", lineno)
        if name in values:
            raise ConfigError(key, f"duplicate key (first set on line {lines[name]})", lineno)
        value = _convert(name, raw, lineno)
        if deg:
            value = math.radians(value)
        values[name] = value
        lines[name] = lineno

    def line_of(name):
        return lines.get(name)

    has_physical = [k for k in PHYSICAL_KEYS if k in values]
    if "kappa" in values and has_physical:
        raise ConfigError(
            "kappa", "exactly one of kappa / physical parameters "
            f"({', '.join(PHYSICAL_KEYS)}) must be given", line_of(has_physical[0]),
        )
    if "kappa" not in values and not has_physical:
        raise ConfigError("kappa", "exactly one of kappa / physical parameters must be given")
    physical = None
    if has_physical:
        missing = [k for k in PHYSICAL_KEYS if k not in values]
        if missing:
            raise ConfigError(missing[0], "missing from physical parameter block")
        for k in PHYSICAL_KEYS:
            if values[k] <= 0:
                raise ConfigError(k, "must be > 0", line_of(k))
        physical = PhysicalParams(**{k: values[k] for k in PHYSICAL_KEYS})
    elif values["kappa"] < 0:
        raise ConfigError("kappa", "must be >= 0", line_of("kappa"))

    mode = values.get("mode")
    if mode is None:
        raise ConfigError("mode", f"required, one of {', '.join(MODES)}")
    if mode not in MODES:
        raise ConfigError("mode", f"must be one of {', '.join(MODES)}, got {mode!r}", line_of("mode"))

    kwargs: dict[str, object] = {"mode": mode, "physical": physical, "kappa": values.get("kappa")}
    for key in ("theta_start", "theta_end", "points", "output_path", "revival_max_n",
                "scan_step", "scan_theta", "branch_hint", "tolerance"):
        if key in values:
            kwargs[key] = values[key]
    cfg_defaults = RunConfig(mode=mode, kappa=0.0)
    points = kwargs.get("points", cfg_defaults.points)
    start = kwargs.get("theta_start", cfg_defaults.theta_start)
    end = kwargs.get("theta_end", cfg_defaults.theta_end)
    if points < 1:
        raise ConfigError("points", "must be >= 1", line_of("points"))
    if end < start or (points > 1 and end == start):
        raise ConfigError("theta_end", f"must exceed theta_start ({fmt(start)})", line_of("theta_end"))
    if kwargs.get("revival_max_n", 1) < 1:
        raise ConfigError("revival_max_n", "must be >= 1", line_of("revival_max_n"))
    if not 0 < kwargs.get("scan_step", cfg_defaults.scan_step) <= 0.1:
        raise ConfigError("scan_step", "must lie in (0, 0.1]", line_of("scan_step"))
    if kwargs.get("branch_hint", 0) < 0:
        raise ConfigError("branch_hint", "must be >= 0", line_of("branch_hint"))
    if kwargs.get("tolerance", 1.0) <= 0:
        raise ConfigError("tolerance", "must be > 0", line_of("tolerance"))
    if mode == "estimate-kappa" and tuning.revival_index(kwargs.get("scan_theta", cfg_defaults.scan_theta)) is None:
        raise ConfigError("scan_theta", "must be a positive multiple of 2 pi for estimate-kappa",
                          line_of("scan_theta"))

    if "chi" in values and "chi_samples" in values:
        raise ConfigError("chi_samples", "give either chi or chi_samples, not both", line_of("chi_samples"))
    if "chi_samples" in values:
        kwargs["chi"] = _parse_samples(values["chi_samples"], line_of("chi_samples"))
    elif "chi" in values:
        kwargs["chi"] = PhaseProfile.constant(values["chi"])

    oracle_keys = [k for k in ("oracle_dim", "oracle_propagator", "oracle_steps_per_period") if k in values]
    if oracle_keys or mode == "oracle-compare":
        try:
            kwargs["oracle"] = fock_oracle.OracleConfig(
                dim=values.get("oracle_dim"),
                propagator=values.get("oracle_propagator", "eigendecomposition"),
                steps_per_period=values.get("oracle_steps_per_period", 2000),
            )
        except fock_oracle.ConfigurationError as exc:
            key = oracle_keys[0] if oracle_keys else "oracle_dim"
            raise ConfigError(key, str(exc), line_of(key)) from None
    return RunConfig(**kwargs)


# -- mode runners: each returns (column names, rows, trailing summary lines, exit code)


def _simulate(cfg: RunConfig):
    kappa = cfg.resolved_kappa
    records = analytic.time_series(kappa, cfg.theta_grid(), cfg.chi)
    env = np.atleast_1d(analytic.visibility_envelope(kappa, cfg.theta_grid()))
    rows = [
        (r.theta, r.chi, r.i_c, r.i_d, r.coherence_ab.real, r.coherence_ab.imag,
         r.cross_cd.real, r.cross_cd.imag, e)
        for r, e in zip(records, env)
    ]
    cols = ("theta", "chi", "i_c", "i_d", "re_coh", "im_coh", "re_cross", "im_cross", "envelope")
    return cols, rows, [], EXIT_OK


def _revival(cfg: RunConfig):
    kappa = cfg.resolved_kappa
    rows = []
    for n in range(1, cfg.revival_max_n + 1):
        theta_n = 2 * math.pi * n
        chi_exact = tuning.revival_phase_exact(n, kappa)
        i_c, _ = analytic.output_intensities(kappa, theta_n, chi_exact)
        rows.append((n, theta_n, tuning.revival_phase_paper(n, kappa), chi_exact, i_c))
    return ("n", "theta_n", "chi_paper", "chi_exact", "i_c_at_exact"), rows, [], EXIT_OK


def _oracle_intensities(kappa: float, theta: float, oracle_cfg):
    """chi -> (I_C, I_D) from one oracle evolution (branches do not depend on chi)."""
    pair = fock_oracle.evolve_branches(kappa, theta, oracle_cfg)

    def intensities(chi):
        chi = np.atleast_1d(np.asarray(chi, dtype=float))
        out = [fock_oracle.beamsplitter_output(pair, c) for c in chi]
        return np.array([r.i_c for r in out]), np.array([r.i_d for r in out])

    return intensities


def _scan(cfg: RunConfig):
    kappa = cfg.resolved_kappa
    source = None
    if cfg.oracle is not None:
        source = _oracle_intensities(kappa, cfg.scan_theta, cfg.oracle)
    scan = tuning.scan_chi(kappa, cfg.scan_theta, cfg.scan_step, source)
    return scan, source


def _scan_summary(scan: tuning.ScanResult) -> list[str]:
    return [
        f"chi_star = {fmt(scan.chi_star)}",
        f"contrast_at_star = {fmt(scan.contrast_at_star)}",
        f"kappa_sq_estimate = {fmt(scan.kappa_sq_estimate)}",
        f"estimate_valid = {str(scan.estimate_valid).lower()}",
        f"grid_step = {fmt(scan.grid_step)}",
    ]


def _scan_chi(cfg: RunConfig):
    scan, _ = _scan(cfg)
    i_c = (1.0 + scan.contrast) / 2.0
    rows = [(c, a, 1.0 - a, d) for c, a, d in zip(scan.chi_grid, i_c, scan.contrast)]
    return ("chi", "i_c", "i_d", "contrast"), rows, _scan_summary(scan), EXIT_OK


def _estimate_kappa(cfg: RunConfig):
    scan, _ = _scan(cfg)
    kappa_hat = tuning.estimate_kappa(scan, cfg.branch_hint)
    kappa = cfg.resolved_kappa
    cols = ("kappa_hat", "kappa_input", "abs_error", "kappa_sq_estimate", "chi_star",
            "contrast_at_star", "revival_n", "branch_hint", "grid_step")
    row = (kappa_hat, kappa, abs(kappa_hat - kappa), scan.kappa_sq_estimate, scan.chi_star,
           scan.contrast_at_star, scan.revival_n, cfg.branch_hint, scan.grid_step)
    return cols, [row], [], EXIT_OK


def _oracle_compare(cfg: RunConfig):
    report = fock_oracle.compare_with_analytic(
        cfg.resolved_kappa, cfg.theta_grid(), cfg.chi, cfg.oracle
    )
    chi = np.atleast_1d(cfg.chi(report.theta))
    fields = fock_oracle.ComparisonReport.FIELDS
    rows = [
        (report.theta[j], chi[j] if chi.size > 1 else chi[0],
         *(report.deviations[f][j] for f in fields))
        for j in range(report.theta.size)
    ]
    cols = ("theta", "chi", *(f"dev_{f}" for f in fields))
    worst = report.worst
    passed = worst < cfg.tolerance
    summary = [f"max_dev_{f} = {fmt(v)}" for f, v in report.max_deviation.items()]
    summary += [
        f"max_deviation = {fmt(worst)}",
        f"tolerance = {fmt(cfg.tolerance)}",
        f"status = {'pass' if passed else 'fail'}",
    ]
    if not passed:
        logger.error("oracle deviation %.3e exceeds tolerance %.3e", worst, cfg.tolerance)
    return cols, rows, summary, EXIT_OK if passed else EXIT_NUMERIC


RUNNERS = {
    "simulate": _simulate,
    "revival": _revival,
    "scan-chi": _scan_chi,
    "estimate-kappa": _estimate_kappa,
    "oracle-compare": _oracle_compare,
}


def _cell(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if x is None:
        return ""
    return fmt(x)


def render(cfg: RunConfig, cols, rows, summary) -> str:
    out = [f"# catmew {cfg.mode}"]
    out += [f"# {k} = {v}" for k, v in cfg.header_items()]
    out.append(",".join(cols))
    out += [",".join(_cell(x) for x in row) for row in rows]
    out += [f"# {line}" for line in summary]
    return "\n".join(out) + "\n"


def run(cfg: RunConfig) -> int:
    """Execute ``cfg`` and write its output file; returns the exit code."""
    path = Path(cfg.output_path or f"catmew-{cfg.mode}.csv")
    logger.info("running %s (kappa=%.6g)", cfg.mode, cfg.resolved_kappa)
    try:
        cols, rows, summary, code = RUNNERS[cfg.mode](cfg)
    except (fock_oracle.TruncationError, fock_oracle.ConfigurationError,
            ArithmeticError, ValueError) as exc:
        logger.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    text = render(cfg, cols, rows, summary)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        logger.error("cannot write %s: %s", path, exc)
        return EXIT_IO
    logger.info("wrote %d rows to %s", len(rows), path)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="catmew",
        description="Single-photon optomechanical interferometer: closed forms and Fock-space oracle.",
    )
    parser.add_argument("config", help="key=value run configuration file")
    parser.add_argument("--output", help="override output_path")
    parser.add_argument("--tolerance", type=float, help="override oracle-compare tolerance")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("catmew: %(levelname)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.propagate = False
    logger.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        logger.error("cannot read config: %s", exc)
        return EXIT_IO
    try:
        cfg = parse_config(text)
        overrides = {}
        if args.output is not None:
            overrides["output_path"] = args.output
        if args.tolerance is not None:
            if not (args.tolerance > 0 and math.isfinite(args.tolerance)):
                raise ConfigError("tolerance", "must be a positive finite number")
            overrides["tolerance"] = args.tolerance
        if overrides:
            cfg = RunConfig(**{**cfg.__dict__, **overrides})
    except ConfigError as exc:
        logger.error("config error: %s", exc)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
