"""Experiment configuration, seeded Monte-Carlo sweeps, and CSV output.

A config describes one topology (OFDM numerology, per-link power delay
profiles, noise variances, relay gain rule) plus a CFO sweep: which offset
axis moves, the grid it moves over, and the noise scalings at which the
sweep repeats.  `run_sweep` evaluates the closed-form SNR and/or the
Monte-Carlo estimate at every point and returns rows ready for `write_csv`.

Noise convention: configured noise variances are per received frequency
bin, the same quantities the closed-form SNR consumes.  The simulator
injects time-domain noise at variance var/N per sample, which the
un-normalized transform maps back to var per bin.

Reproducibility: trial t draws everything from a generator seeded with
(master_seed, t), and per-trial powers are reduced in trial order, so the
result is bitwise independent of how trials are distributed over workers.
"""
from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .analysis import (
    BranchStats,
    DirectStats,
    LinkStats,
    SensitivityPair,
    SnrBreakdown,
    TopologyStats,
    analytical_snr,
    multi_relay_snr,
    sensitivities,
)
from .channel import PowerDelayProfile, exponential_profile, flat_profile, uniform_profile
from .ofdm import OfdmParams
from .relay import DirectPath, RelayGainConfig, RelayPath, gain_factor, simulate_trial
from .transforms import require_fractional_cfo

SWEEP_AXES = ("eps1", "eps2", "both_equal")
MODES = ("analytical", "simulate", "both")

CSV_HEADER = "eps1,eps2,analytical_db,empirical_db,stderr_db,lambda1,lambda2,trials,seed"


class ConfigError(Exception):
    """Any problem with an experiment configuration."""


class ConfigParseError(ConfigError):
    """The config source could not be read or parsed."""


class ConfigKeyError(ConfigError):
    """The config contains a key that is not part of the schema."""


class ConfigValueError(ConfigError):
    """A config value violates an invariant."""


@dataclass(frozen=True)
class RelaySpec:
    """Config-level description of one relay branch."""

    hop1_profile: PowerDelayProfile
    hop2_profile: PowerDelayProfile
    cfo: float
    gain: RelayGainConfig
    relay_noise_var: float
    dest_noise_var: float


@dataclass(frozen=True)
class ExperimentConfig:
    ofdm: OfdmParams
    direct_profile: PowerDelayProfile
    direct_cfo: float
    direct_noise_var: float
    relays: tuple
    sweep_axis: str
    sweep_grid: tuple
    noise_scales: tuple
    trials: int
    master_seed: int
    mode: str
    workers: int = 1


@dataclass(frozen=True)
class PointAssignment:
    """Concrete offsets and noise scaling for one sweep point."""

    direct_cfo: float
    relay_cfos: tuple
    noise_scale: float = 1.0


@dataclass(frozen=True)
class EmpiricalSnr:
    """Monte-Carlo SNR estimate with a delta-method standard error in dB."""

    snr_linear: float
    snr_db: float
    stderr_db: float
    trials: int
    master_seed: int


@dataclass(frozen=True)
class SweepRow:
    eps1: float
    eps2: float
    analytical_db: float | None
    empirical_db: float | None
    stderr_db: float | None
    lambda1: float | None
    lambda2: float | None
    trials: int
    seed: int


# --------------------------------------------------------------------------
# presets

PRESETS = {
    # Flat (single-tap) fading on every hop; relay's second hop carries 4x
    # the direct link's average power, all links share one noise variance,
    # relay gain from uniform power allocation.
    "fig3_flat": {
        "ofdm": {"n_subcarriers": 64, "cp_len": 16, "constellation": "qpsk", "symbol_power": 1.0},
        "direct": {"profile": {"kind": "flat", "power": 1.0}, "cfo": 0.0, "noise_var": 0.1},
        "relays": [
            {
                "hop1_profile": {"kind": "flat", "power": 1.0},
                "hop2_profile": {"kind": "flat", "power": 4.0},
                "cfo": 0.0,
                "relay_noise_var": 0.1,
                "dest_noise_var": 0.1,
                "gain": {"mode": "upa", "total_power": 2.0},
            }
        ],
        "sweep": {"axis": "eps2", "grid": [0.0, 0.1, 0.2, 0.3, 0.4]},
        "noise_scales": [1.0, 0.1],
        "trials": 2000,
        "master_seed": 20260808,
        "mode": "both",
    },
    # Frequency-selective variant: 4 equal-power taps per hop, same link
    # powers and noise relations as fig3_flat.
    "fig4_selective": {
        "ofdm": {"n_subcarriers": 64, "cp_len": 16, "constellation": "qpsk", "symbol_power": 1.0},
        "direct": {
            "profile": {"kind": "uniform", "n_taps": 4, "power": 1.0},
            "cfo": 0.0,
            "noise_var": 0.1,
        },
        "relays": [
            {
                "hop1_profile": {"kind": "uniform", "n_taps": 4, "power": 1.0},
                "hop2_profile": {"kind": "uniform", "n_taps": 4, "power": 4.0},
                "cfo": 0.0,
                "relay_noise_var": 0.1,
                "dest_noise_var": 0.1,
                "gain": {"mode": "upa", "total_power": 2.0},
            }
        ],
        "sweep": {"axis": "eps2", "grid": [0.0, 0.1, 0.2, 0.3, 0.4]},
        "noise_scales": [1.0, 0.1],
        "trials": 2000,
        "master_seed": 20260808,
        "mode": "both",
    },
}

PRESET_INFO = {
    "fig3_flat": "flat fading, relay second hop at 4x direct power, UPA gain, eps2 sweep",
    "fig4_selective": "4-tap uniform profiles per hop, otherwise as fig3_flat",
}


# --------------------------------------------------------------------------
# config parsing

def _check_keys(raw: dict, allowed, context: str) -> None:
    unknown = sorted(set(raw) - set(allowed))
    if unknown:
        raise ConfigKeyError(
            f"unknown key(s) {unknown} in {context}; allowed keys: {sorted(allowed)}"
        )


def _require(raw: dict, key: str, context: str):
    if key not in raw:
        raise ConfigValueError(f"missing required key {key!r} in {context}")
    return raw[key]


def _as_number(value, key: str, context: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValueError(f"{context}.{key} must be a number, got {value!r}")
    return float(value)


def _as_int(value, key: str, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigValueError(f"{context}.{key} must be an integer, got {value!r}")
    return value


def _parse_profile(raw, context: str) -> PowerDelayProfile:
    if not isinstance(raw, dict):
        raise ConfigValueError(f"{context} must be an object, got {raw!r}")
    kind = _require(raw, "kind", context)
    try:
        if kind == "flat":
            _check_keys(raw, {"kind", "power"}, context)
            return flat_profile(_as_number(_require(raw, "power", context), "power", context))
        if kind == "uniform":
            _check_keys(raw, {"kind", "n_taps", "power"}, context)
            return uniform_profile(
                _as_int(_require(raw, "n_taps", context), "n_taps", context),
                _as_number(_require(raw, "power", context), "power", context),
            )
        if kind == "exponential":
            _check_keys(raw, {"kind", "n_taps", "power", "decay"}, context)
            return exponential_profile(
                _as_int(_require(raw, "n_taps", context), "n_taps", context),
                _as_number(_require(raw, "power", context), "power", context),
                _as_number(raw.get("decay", 1.0), "decay", context),
            )
    except ValueError as exc:
        raise ConfigValueError(f"{context}: {exc}") from exc
    raise ConfigValueError(
        f"{context}.kind must be one of ['flat', 'uniform', 'exponential'], got {kind!r}"
    )


def _parse_gain(raw, context: str) -> RelayGainConfig:
    if not isinstance(raw, dict):
        raise ConfigValueError(f"{context} must be an object, got {raw!r}")
    allowed = {"mode", "rho", "total_power", "source_power", "relay_power"}
    _check_keys(raw, allowed, context)
    kwargs = {}
    for key in allowed:
        if key in raw:
            kwargs[key] = raw[key] if key == "mode" else _as_number(raw[key], key, context)
    try:
        return RelayGainConfig(**kwargs)
    except ValueError as exc:
        raise ConfigValueError(f"{context}: {exc}") from exc


def _parse_cfo(value, key: str, context: str) -> float:
    eps = _as_number(value, key, context)
    try:
        return require_fractional_cfo(eps, name=f"{context}.{key}")
    except ValueError as exc:
        raise ConfigValueError(str(exc)) from exc


def _parse_relay(raw, context: str) -> RelaySpec:
    if not isinstance(raw, dict):
        raise ConfigValueError(f"{context} must be an object, got {raw!r}")
    allowed = {"hop1_profile", "hop2_profile", "cfo", "gain", "relay_noise_var", "dest_noise_var"}
    _check_keys(raw, allowed, context)
    relay_nv = _as_number(_require(raw, "relay_noise_var", context), "relay_noise_var", context)
    dest_nv = _as_number(_require(raw, "dest_noise_var", context), "dest_noise_var", context)
    if relay_nv < 0 or dest_nv < 0:
        raise ConfigValueError(f"{context}: noise variances must be >= 0")
    return RelaySpec(
        hop1_profile=_parse_profile(_require(raw, "hop1_profile", context), f"{context}.hop1_profile"),
        hop2_profile=_parse_profile(_require(raw, "hop2_profile", context), f"{context}.hop2_profile"),
        cfo=_parse_cfo(raw.get("cfo", 0.0), "cfo", context),
        gain=_parse_gain(_require(raw, "gain", context), f"{context}.gain"),
        relay_noise_var=relay_nv,
        dest_noise_var=dest_nv,
    )


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build and fully validate an ExperimentConfig from plain data."""
    if not isinstance(raw, dict):
        raise ConfigValueError(f"config root must be an object, got {type(raw).__name__}")
    allowed = {
        "ofdm", "direct", "relays", "sweep", "noise_scales",
        "trials", "master_seed", "mode", "workers",
    }
    _check_keys(raw, allowed, "config")

    ofdm_raw = _require(raw, "ofdm", "config")
    _check_keys(ofdm_raw, {"n_subcarriers", "cp_len", "constellation", "symbol_power"}, "ofdm")
    try:
        ofdm = OfdmParams(
            n_subcarriers=_as_int(_require(ofdm_raw, "n_subcarriers", "ofdm"), "n_subcarriers", "ofdm"),
            cp_len=_as_int(_require(ofdm_raw, "cp_len", "ofdm"), "cp_len", "ofdm"),
            constellation=ofdm_raw.get("constellation", "qpsk"),
            symbol_power=_as_number(ofdm_raw.get("symbol_power", 1.0), "symbol_power", "ofdm"),
        )
    except ValueError as exc:
        raise ConfigValueError(f"ofdm: {exc}") from exc

    direct_raw = _require(raw, "direct", "config")
    _check_keys(direct_raw, {"profile", "cfo", "noise_var"}, "direct")
    direct_profile = _parse_profile(_require(direct_raw, "profile", "direct"), "direct.profile")
    direct_cfo = _parse_cfo(direct_raw.get("cfo", 0.0), "cfo", "direct")
    direct_noise = _as_number(_require(direct_raw, "noise_var", "direct"), "noise_var", "direct")
    if direct_noise < 0:
        raise ConfigValueError("direct.noise_var must be >= 0")

    relays_raw = _require(raw, "relays", "config")
    if not isinstance(relays_raw, list) or not relays_raw:
        raise ConfigValueError("relays must be a non-empty list of relay branches")
    relays = tuple(_parse_relay(r, f"relays[{i}]") for i, r in enumerate(relays_raw))

    sweep_raw = _require(raw, "sweep", "config")
    _check_keys(sweep_raw, {"axis", "grid"}, "sweep")
    axis = _require(sweep_raw, "axis", "sweep")
    if axis not in SWEEP_AXES:
        raise ConfigValueError(f"sweep.axis must be one of {SWEEP_AXES}, got {axis!r}")
    grid_raw = _require(sweep_raw, "grid", "sweep")
    if not isinstance(grid_raw, list) or not grid_raw:
        raise ConfigValueError("sweep.grid must be a non-empty list of offsets")
    grid = tuple(_parse_cfo(g, f"grid[{i}]", "sweep") for i, g in enumerate(grid_raw))

    scales_raw = raw.get("noise_scales", [1.0])
    if not isinstance(scales_raw, list) or not scales_raw:
        raise ConfigValueError("noise_scales must be a non-empty list of positive factors")
    scales = tuple(_as_number(s, f"noise_scales[{i}]", "config") for i, s in enumerate(scales_raw))
    if any(s <= 0 for s in scales):
        raise ConfigValueError("noise_scales must be > 0")

    trials = _as_int(_require(raw, "trials", "config"), "trials", "config")
    if trials < 1:
        raise ConfigValueError(f"trials must be >= 1, got {trials}")
    master_seed = _as_int(_require(raw, "master_seed", "config"), "master_seed", "config")
    if not 0 <= master_seed < 2 ** 64:
        raise ConfigValueError("master_seed must be a 64-bit unsigned integer")
    mode = raw.get("mode", "both")
    if mode not in MODES:
        raise ConfigValueError(f"mode must be one of {MODES}, got {mode!r}")
    workers = _as_int(raw.get("workers", 1), "workers", "config")
    if workers < 1:
        raise ConfigValueError(f"workers must be >= 1, got {workers}")

    # inter-symbol interference conditions, checked at load time
    if ofdm.cp_len < direct_profile.n_taps:
        raise ConfigValueError(
            f"inter-symbol interference condition violated: cyclic prefix cp_len="
            f"{ofdm.cp_len} is shorter than the direct channel's {direct_profile.n_taps} taps"
        )
    for i, spec in enumerate(relays):
        need = spec.hop1_profile.n_taps + spec.hop2_profile.n_taps
        if ofdm.cp_len < need:
            raise ConfigValueError(
                f"inter-symbol interference condition violated: cyclic prefix cp_len="
                f"{ofdm.cp_len} is shorter than relays[{i}]'s combined "
                f"{spec.hop1_profile.n_taps}+{spec.hop2_profile.n_taps} hop taps"
            )

    return ExperimentConfig(
        ofdm=ofdm,
        direct_profile=direct_profile,
        direct_cfo=direct_cfo,
        direct_noise_var=direct_noise,
        relays=relays,
        sweep_axis=axis,
        sweep_grid=grid,
        noise_scales=scales,
        trials=trials,
        master_seed=master_seed,
        mode=mode,
        workers=workers,
    )


def load_config(path) -> ExperimentConfig:
    """Load an experiment config from a JSON file or a shipped preset name."""
    name = str(path)
    if name in PRESETS:
        return config_from_dict(PRESETS[name])
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def config_digest(cfg: ExperimentConfig) -> str:
    """Short stable hash of the experiment (excludes execution details)."""
    payload = {
        "ofdm": [cfg.ofdm.n_subcarriers, cfg.ofdm.cp_len, cfg.ofdm.constellation,
                 cfg.ofdm.symbol_power],
        "direct": [cfg.direct_profile.tap_powers.tolist(), cfg.direct_cfo, cfg.direct_noise_var],
        "relays": [
            [
                s.hop1_profile.tap_powers.tolist(),
                s.hop2_profile.tap_powers.tolist(),
                s.cfo,
                [s.gain.mode, s.gain.rho, s.gain.total_power, s.gain.source_power,
                 s.gain.relay_power],
                s.relay_noise_var,
                s.dest_noise_var,
            ]
            for s in cfg.relays
        ],
        "sweep": [cfg.sweep_axis, list(cfg.sweep_grid)],
        "noise_scales": list(cfg.noise_scales),
        "trials": cfg.trials,
        "master_seed": cfg.master_seed,
        "mode": cfg.mode,
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


# --------------------------------------------------------------------------
# point evaluation

def resolve_gains(cfg: ExperimentConfig, noise_scale: float = 1.0) -> tuple:
    """Per-relay amplification factors at the given noise scaling."""
    return tuple(
        gain_factor(s.gain, s.hop1_profile.total_power, s.relay_noise_var * noise_scale)
        for s in cfg.relays
    )


def point_link_stats(cfg: ExperimentConfig, point: PointAssignment):
    """LinkStats of a single-relay point, or None for multi-relay configs."""
    if len(cfg.relays) != 1:
        return None
    spec = cfg.relays[0]
    (rho,) = resolve_gains(cfg, point.noise_scale)
    return LinkStats(
        direct_gain_var=cfg.direct_profile.total_power,
        hop1_gain_var=spec.hop1_profile.total_power,
        hop2_gain_var=spec.hop2_profile.total_power,
        symbol_power=cfg.ofdm.symbol_power,
        direct_noise_var=cfg.direct_noise_var * point.noise_scale,
        relay_noise_var=spec.relay_noise_var * point.noise_scale,
        dest_noise_var=spec.dest_noise_var * point.noise_scale,
        cfo_direct=point.direct_cfo,
        cfo_relay=point.relay_cfos[0],
        rho=rho,
        n_subcarriers=cfg.ofdm.n_subcarriers,
    )


def point_topology_stats(cfg: ExperimentConfig, point: PointAssignment) -> TopologyStats:
    rhos = resolve_gains(cfg, point.noise_scale)
    branches = tuple(
        BranchStats(
            hop1_gain_var=s.hop1_profile.total_power,
            hop2_gain_var=s.hop2_profile.total_power,
            cfo=eps,
            rho=rho,
            relay_noise_var=s.relay_noise_var * point.noise_scale,
            dest_noise_var=s.dest_noise_var * point.noise_scale,
        )
        for s, eps, rho in zip(cfg.relays, point.relay_cfos, rhos)
    )
    return TopologyStats(
        direct=DirectStats(
            cfg.direct_profile.total_power,
            point.direct_cfo,
            cfg.direct_noise_var * point.noise_scale,
        ),
        branches=branches,
        symbol_power=cfg.ofdm.symbol_power,
        n_subcarriers=cfg.ofdm.n_subcarriers,
    )


def point_analytical(cfg: ExperimentConfig, point: PointAssignment) -> SnrBreakdown:
    """Closed-form SNR at one sweep point."""
    stats = point_link_stats(cfg, point)
    if stats is not None:
        return analytical_snr(stats)
    return multi_relay_snr(point_topology_stats(cfg, point))


def point_sensitivities(cfg: ExperimentConfig, point: PointAssignment):
    """Chain-rule sensitivities at one single-relay point, None otherwise."""
    stats = point_link_stats(cfg, point)
    if stats is None:
        return None
    try:
        return sensitivities(stats, "chain_rule")
    except ValueError:
        return None  # infinite-SNR point


def _simulation_paths(cfg: ExperimentConfig, point: PointAssignment):
    n = cfg.ofdm.n_subcarriers
    scale = point.noise_scale
    rhos = resolve_gains(cfg, scale)
    direct = DirectPath(
        cfg.direct_profile, point.direct_cfo, cfg.direct_noise_var * scale / n
    )
    relays = [
        RelayPath(
            s.hop1_profile,
            s.hop2_profile,
            eps,
            rho,
            s.relay_noise_var * scale / n,
            s.dest_noise_var * scale / n,
        )
        for s, eps, rho in zip(cfg.relays, point.relay_cfos, rhos)
    ]
    return direct, relays


def _trial_powers_chunk(args):
    cfg, point, indices = args
    direct, relays = _simulation_paths(cfg, point)
    sig = np.empty(len(indices))
    res = np.empty(len(indices))
    for i, t in enumerate(indices):
        rng = np.random.default_rng([cfg.master_seed, int(t)])
        outcome = simulate_trial(cfg.ofdm, direct, relays, rng)
        sig[i] = outcome.signal_power
        res[i] = outcome.residual_power
    return sig, res


def _point_trial_powers(cfg: ExperimentConfig, point: PointAssignment):
    indices = np.arange(cfg.trials)
    if cfg.workers <= 1 or cfg.trials < 2 * cfg.workers:
        return _trial_powers_chunk((cfg, point, indices))
    chunks = np.array_split(indices, cfg.workers)
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        parts = list(pool.map(_trial_powers_chunk, [(cfg, point, c) for c in chunks]))
    sig = np.concatenate([p[0] for p in parts])
    res = np.concatenate([p[1] for p in parts])
    return sig, res


def _aggregate_trials(sig: np.ndarray, res: np.ndarray, cfg: ExperimentConfig) -> EmpiricalSnr:
    """Ratio-of-sums estimate with a delta-method standard error in dB.

    The ratio of summed powers estimates the ratio of expectations; the
    per-trial (signal, residual) pairs give its log-domain variance.
    """
    trials = sig.size
    total_sig = float(np.sum(sig))
    total_res = float(np.sum(res))
    # A residual below ~1e-24 of the signal is rounding dust from the
    # transform round trip, not a real impairment (the weakest modelled
    # impairments sit many orders above); report the infinity sentinel.
    if total_res <= total_sig * 1e-24:
        return EmpiricalSnr(math.inf, math.inf, 0.0, trials, cfg.master_seed)
    lin = total_sig / total_res
    db = 10.0 * math.log10(lin) if lin > 0 else -math.inf
    if trials > 1 and lin > 0:
        ms, mr = total_sig / trials, total_res / trials
        vs = float(np.var(sig, ddof=1)) / trials
        vr = float(np.var(res, ddof=1)) / trials
        cov = float(np.cov(sig, res, ddof=1)[0, 1]) / trials
        var_log = vs / ms ** 2 + vr / mr ** 2 - 2.0 * cov / (ms * mr)
        stderr_db = 10.0 / math.log(10.0) * math.sqrt(max(var_log, 0.0))
    else:
        stderr_db = math.nan
    return EmpiricalSnr(lin, db, stderr_db, trials, cfg.master_seed)


def run_point(cfg: ExperimentConfig, point: PointAssignment):
    """Evaluate one sweep point.

    Returns (EmpiricalSnr or None, SnrBreakdown); the empirical half runs
    only when the config mode asks for simulation.
    """
    breakdown = point_analytical(cfg, point)
    empirical = None
    if cfg.mode in ("simulate", "both"):
        sig, res = _point_trial_powers(cfg, point)
        empirical = _aggregate_trials(sig, res, cfg)
    return empirical, breakdown


# --------------------------------------------------------------------------
# sweeps

def sweep_points(cfg: ExperimentConfig) -> list:
    """Point assignments in output order: noise scales outer, grid inner."""
    configured = tuple(s.cfo for s in cfg.relays)
    points = []
    for scale in cfg.noise_scales:
        for g in cfg.sweep_grid:
            if cfg.sweep_axis == "eps1":
                points.append(PointAssignment(g, configured, scale))
            elif cfg.sweep_axis == "eps2":
                points.append(PointAssignment(cfg.direct_cfo, (g,) * len(cfg.relays), scale))
            else:  # both_equal
                points.append(PointAssignment(g, (g,) * len(cfg.relays), scale))
    return points


def run_sweep(cfg: ExperimentConfig, on_row=None) -> list:
    """Evaluate every sweep point and return the result table.

    When the mode omits a side, the corresponding columns are left empty
    (None).  `on_row` is called with each finished SweepRow, for progress
    reporting.
    """
    rows = []
    for point in sweep_points(cfg):
        empirical, breakdown = run_point(cfg, point)
        lams = point_sensitivities(cfg, point) if cfg.mode != "simulate" else None
        row = SweepRow(
            eps1=point.direct_cfo,
            eps2=point.relay_cfos[0],
            analytical_db=breakdown.snr_db if cfg.mode != "simulate" else None,
            empirical_db=empirical.snr_db if empirical is not None else None,
            stderr_db=empirical.stderr_db if empirical is not None else None,
            lambda1=lams.lambda1 if isinstance(lams, SensitivityPair) else None,
            lambda2=lams.lambda2 if isinstance(lams, SensitivityPair) else None,
            trials=cfg.trials if empirical is not None else 0,
            seed=cfg.master_seed,
        )
        rows.append(row)
        if on_row is not None:
            on_row(row)
    return rows


def _format_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def write_csv(rows, path) -> None:
    """Write sweep rows as UTF-8 CSV with the fixed column set."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for r in rows:
                fields = (
                    r.eps1, r.eps2, r.analytical_db, r.empirical_db,
                    r.stderr_db, r.lambda1, r.lambda2, r.trials, r.seed,
                )
                fh.write(",".join(_format_field(v) for v in fields) + "\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write CSV to {path}: {exc}") from exc


def with_overrides(cfg: ExperimentConfig, *, mode=None, trials=None,
                   master_seed=None, workers=None) -> ExperimentConfig:
    """Copy a config with CLI-style overrides applied."""
    updates = {}
    if mode is not None:
        if mode not in MODES:
            raise ConfigValueError(f"mode must be one of {MODES}, got {mode!r}")
        updates["mode"] = mode
    if trials is not None:
        if trials < 1:
            raise ConfigValueError(f"trials must be >= 1, got {trials}")
        updates["trials"] = trials
    if master_seed is not None:
        if not 0 <= master_seed < 2 ** 64:
            raise ConfigValueError("master_seed must be a 64-bit unsigned integer")
        updates["master_seed"] = master_seed
    if workers is not None:
        if workers < 1:
            raise ConfigValueError(f"workers must be >= 1, got {workers}")
        updates["workers"] = workers
    return replace(cfg, **updates) if updates else cfg
