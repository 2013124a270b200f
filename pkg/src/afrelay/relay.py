"""End-to-end simulation of one transmission period.

A trial sends one OFDM symbol over the direct link and over one or more
two-hop amplify-and-forward relay branches, each impaired by its own
multipath channel(s), fractional CFO, and noise.  The destination removes
the prefix, transforms each branch, co-phases it using genie knowledge of
the true dominant-term coefficient, and combines with equal gain.

The per-trial outcome splits every branch spectrum into its coherent
signal term and the interference-plus-noise remainder.  The split is done
branch by branch (not on the combined metric): the closed-form SNR tracks
the per-branch second moments, and the combined metric's signal power
would retain a cross term between branch magnitudes that the closed form
does not contain.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .channel import (
    PowerDelayProfile,
    add_awgn,
    apply_cfo,
    apply_channel,
    draw_channel,
    frequency_response,
)
from .ofdm import OfdmParams, TimeSignal, draw_symbols, modulate
from .transforms import cfo_spectrum, dft

_GAIN_MODES = ("fixed", "general", "upa", "upa_asymptotic")


@dataclass(frozen=True)
class RelayGainConfig:
    """How the relay's amplification factor is chosen.

    fixed           -- use `rho` as given.
    general         -- power-constrained forwarding: the relay retransmits
                       at `relay_power` given a source transmitting at
                       `source_power`.
    upa             -- uniform allocation of `total_power` between source
                       and relay (each gets half).
    upa_asymptotic  -- the total_power >> noise limit of upa.
    """

    mode: str = "upa"
    rho: float | None = None
    total_power: float | None = None
    source_power: float | None = None
    relay_power: float | None = None

    def __post_init__(self):
        if self.mode not in _GAIN_MODES:
            raise ValueError(f"unknown gain mode {self.mode!r}, expected one of {_GAIN_MODES}")
        if self.mode == "fixed" and (self.rho is None or self.rho <= 0):
            raise ValueError("fixed gain mode requires rho > 0")
        if self.mode == "general" and (
            self.source_power is None
            or self.relay_power is None
            or self.source_power <= 0
            or self.relay_power <= 0
        ):
            raise ValueError("general gain mode requires source_power > 0 and relay_power > 0")
        if self.mode == "upa" and (self.total_power is None or self.total_power <= 0):
            raise ValueError("upa gain mode requires total_power > 0")


def gain_factor(cfg: RelayGainConfig, hop1_gain_var: float, relay_noise_var: float) -> float:
    """Relay amplification factor for the given first-hop statistics.

    general: rho = sqrt(P_relay / (hop1_gain_var * P_source + relay_noise_var))
    upa:     rho = sqrt(1 / (hop1_gain_var + 2 * relay_noise_var / P_total))
    upa_asymptotic: rho = 1 / sqrt(hop1_gain_var)
    """
    if hop1_gain_var < 0 or relay_noise_var < 0:
        raise ValueError("powers must be non-negative")
    if cfg.mode == "fixed":
        return float(cfg.rho)
    if cfg.mode == "general":
        den = hop1_gain_var * cfg.source_power + relay_noise_var
        if den <= 0:
            raise ValueError("relay input power is zero; gain factor undefined")
        return float(np.sqrt(cfg.relay_power / den))
    if cfg.mode == "upa":
        den = hop1_gain_var + 2.0 * relay_noise_var / cfg.total_power
        if den <= 0:
            raise ValueError("relay input power is zero; gain factor undefined")
        return float(np.sqrt(1.0 / den))
    # upa_asymptotic
    if hop1_gain_var == 0:
        raise ValueError("asymptotic uniform allocation undefined for zero first-hop power")
    return float(1.0 / np.sqrt(hop1_gain_var))


@dataclass
class BranchRealization:
    """One relay branch's drawn channels and fixed impairments."""

    hop1: np.ndarray
    hop2: np.ndarray
    cfo: float
    rho: float
    relay_noise_var: float  # per sample, received at the relay and amplified
    dest_noise_var: float   # per sample, added at the destination


@dataclass(frozen=True)
class TrialOutcome:
    """Accumulated signal and interference-plus-noise powers of one trial."""

    signal_power: float
    residual_power: float
    subcarrier_count: int


def simulate_direct(
    x: TimeSignal,
    taps,
    cfo: float,
    noise_var: float,
    rng: np.random.Generator,
) -> TimeSignal:
    """Direct source-to-destination link: channel, CFO ramp, then AWGN."""
    taps = np.asarray(taps, dtype=np.complex128)
    if x.cp_len < taps.size:
        raise ValueError(
            f"inter-symbol interference: direct channel has {taps.size} taps but the "
            f"cyclic prefix holds {x.cp_len} samples"
        )
    n = x.samples.size - x.cp_len
    y = apply_cfo(apply_channel(x, taps), cfo, n)
    return add_awgn(y, noise_var, rng)


def simulate_relay_branch(
    x: TimeSignal, branch: BranchRealization, rng: np.random.Generator
) -> TimeSignal:
    """Amplify-and-forward branch: both hops cascade, one CFO ramp.

    The forwarded waveform is rho times the CFO-rotated cascade of both
    hop channels; the relay's own received noise arrives amplified by rho
    but neither convolved with the second hop nor rotated, and the
    destination adds its own noise last.
    """
    l1, l2 = np.size(branch.hop1), np.size(branch.hop2)
    if x.cp_len < l1 + l2:
        raise ValueError(
            f"inter-symbol interference: relay hops have {l1}+{l2} taps but the "
            f"cyclic prefix holds {x.cp_len} samples"
        )
    n = x.samples.size - x.cp_len
    cascade = np.convolve(
        np.asarray(branch.hop1, dtype=np.complex128),
        np.asarray(branch.hop2, dtype=np.complex128),
    )
    y = apply_cfo(apply_channel(x, cascade), branch.cfo, n)
    y = TimeSignal(branch.rho * y.samples, y.cp_present, y.cp_len)
    y = add_awgn(y, branch.rho ** 2 * branch.relay_noise_var, rng)
    return add_awgn(y, branch.dest_noise_var, rng)


def branch_gain(hops, cfo: float, n: int, scale: float = 1.0) -> np.ndarray:
    """True dominant-term coefficient per bin: scale * C(cfo,0) * prod H_i[k].

    This is the quantity the genie-aided receiver is granted; its argument
    is the derotation phase and its magnitude the coherent signal weight.
    """
    g = np.full(n, scale * cfo_spectrum(cfo, 0, n), dtype=np.complex128)
    for taps in hops:
        g = g * frequency_response(taps, n)
    return g


def derotate_branch(sig: TimeSignal, gain: np.ndarray) -> np.ndarray:
    """Remove the prefix, transform, and co-phase one branch.

    Bins where the genie gain is exactly zero have no defined phase; they
    are derotated by 0 and reported through a warning, which keeps the
    statistics unbiased (the event has probability zero under continuous
    fading).
    """
    n = gain.size
    if not sig.cp_present or sig.samples.size != n + sig.cp_len:
        raise ValueError("expected an aligned prefix-extended branch signal")
    zero_bins = np.flatnonzero(gain == 0)
    if zero_bins.size:
        warnings.warn(
            f"genie gain is exactly zero at bins {zero_bins.tolist()}; "
            "derotation phase set to 0 there",
            stacklevel=2,
        )
    spectrum = dft(sig.samples[sig.cp_len:])
    return spectrum * np.exp(-1j * np.angle(gain))


def receive_egc(signals, gains) -> np.ndarray:
    """Equal-gain combine: sum of the co-phased branch spectra."""
    signals = list(signals)
    gains = list(gains)
    if not signals or len(signals) != len(gains):
        raise ValueError("need one genie gain vector per branch signal")
    combined = np.zeros(gains[0].size, dtype=np.complex128)
    for sig, gain in zip(signals, gains):
        combined += derotate_branch(sig, gain)
    return combined


def decompose_trial(branch_spectra, gains, symbols) -> TrialOutcome:
    """Split derotated branch spectra into signal and residual powers.

    Per branch b and bin k the coherent signal term is |g_b[k]| X[k]; the
    residual is everything else (inter-carrier leakage plus noise).  Both
    squared magnitudes are summed over branches and bins.
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    branch_spectra = list(branch_spectra)
    gains = list(gains)
    if len(branch_spectra) != len(gains):
        raise ValueError("need one genie gain vector per branch spectrum")
    signal_power = 0.0
    residual_power = 0.0
    for spectrum, gain in zip(branch_spectra, gains):
        coherent = np.abs(gain) * symbols
        signal_power += float(np.sum(np.abs(coherent) ** 2))
        residual_power += float(np.sum(np.abs(spectrum - coherent) ** 2))
    return TrialOutcome(signal_power, residual_power, symbols.size)


@dataclass(frozen=True)
class DirectPath:
    """Statistical description of the direct link for trial simulation."""

    profile: PowerDelayProfile
    cfo: float
    noise_var: float  # per sample


@dataclass(frozen=True)
class RelayPath:
    """Statistical description of one relay branch for trial simulation."""

    hop1_profile: PowerDelayProfile
    hop2_profile: PowerDelayProfile
    cfo: float
    rho: float
    relay_noise_var: float  # per sample
    dest_noise_var: float   # per sample


def simulate_trial(
    params: OfdmParams,
    direct: DirectPath,
    relays,
    rng: np.random.Generator,
) -> TrialOutcome:
    """Run one full transmission period and decompose the received spectra.

    Draw order is fixed (symbols, direct taps, each branch's hop taps,
    then per-path noise) so a trial is a pure function of its generator.
    """
    n = params.n_subcarriers
    relays = list(relays)
    symbols = draw_symbols(params, rng)
    tx = modulate(symbols, params)

    direct_taps = draw_channel(direct.profile, rng)
    hop_taps = [
        (draw_channel(r.hop1_profile, rng), draw_channel(r.hop2_profile, rng)) for r in relays
    ]

    received = [simulate_direct(tx, direct_taps, direct.cfo, direct.noise_var, rng)]
    gains = [branch_gain([direct_taps], direct.cfo, n)]
    for (h1, h2), spec in zip(hop_taps, relays):
        branch = BranchRealization(
            h1, h2, spec.cfo, spec.rho, spec.relay_noise_var, spec.dest_noise_var
        )
        received.append(simulate_relay_branch(tx, branch, rng))
        gains.append(branch_gain([h1, h2], spec.cfo, n, scale=spec.rho))

    spectra = [derotate_branch(sig, gain) for sig, gain in zip(received, gains)]
    return decompose_trial(spectra, gains, symbols)
