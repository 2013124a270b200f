"""Random multipath channels, channel application, CFO ramps, and AWGN.

Channels are block fading: one tap realization per OFDM symbol, taps drawn
as independent circularly-symmetric complex Gaussians (Rayleigh-magnitude
fading) with per-tap variances given by a power delay profile.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ofdm import TimeSignal
from .transforms import dft


@dataclass(frozen=True, eq=False)
class PowerDelayProfile:
    """Per-tap average powers of one link's multipath channel."""

    tap_powers: np.ndarray

    def __post_init__(self):
        powers = np.asarray(self.tap_powers, dtype=np.float64)
        if powers.ndim != 1 or powers.size == 0:
            raise ValueError("tap_powers must be a non-empty 1-D sequence")
        if np.any(powers < 0) or not np.all(np.isfinite(powers)):
            raise ValueError("tap powers must be finite and non-negative")
        object.__setattr__(self, "tap_powers", powers)

    def __eq__(self, other):
        if not isinstance(other, PowerDelayProfile):
            return NotImplemented
        return np.array_equal(self.tap_powers, other.tap_powers)

    @property
    def n_taps(self) -> int:
        return self.tap_powers.size

    @property
    def total_power(self) -> float:
        """Average channel power, flat across frequency bins."""
        return float(self.tap_powers.sum())


def flat_profile(power: float = 1.0) -> PowerDelayProfile:
    """Single-tap (frequency-flat) profile."""
    return PowerDelayProfile(np.array([power]))


def uniform_profile(n_taps: int, power: float = 1.0) -> PowerDelayProfile:
    """n_taps equal-power taps summing to the given total power."""
    if n_taps < 1:
        raise ValueError(f"n_taps must be >= 1, got {n_taps}")
    return PowerDelayProfile(np.full(n_taps, power / n_taps))


def exponential_profile(n_taps: int, power: float = 1.0, decay: float = 1.0) -> PowerDelayProfile:
    """Exponentially decaying taps, p_l ~ exp(-l/decay), summing to power."""
    if n_taps < 1:
        raise ValueError(f"n_taps must be >= 1, got {n_taps}")
    if decay <= 0:
        raise ValueError(f"decay must be > 0, got {decay}")
    shape = np.exp(-np.arange(n_taps) / decay)
    return PowerDelayProfile(power * shape / shape.sum())


def draw_channel(profile: PowerDelayProfile, rng: np.random.Generator) -> np.ndarray:
    """One block-fading realization: zero-mean complex Gaussian taps."""
    std = np.sqrt(profile.tap_powers / 2.0)
    n = profile.n_taps
    return std * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def frequency_response(taps, n: int) -> np.ndarray:
    """Per-bin response H[k]: transform of the taps zero-padded to n."""
    taps = np.asarray(taps, dtype=np.complex128)
    if taps.ndim != 1 or taps.size == 0:
        raise ValueError("taps must be a non-empty 1-D vector")
    if taps.size > n:
        raise ValueError(f"channel has {taps.size} taps, more than n={n} bins")
    padded = np.zeros(n, dtype=np.complex128)
    padded[: taps.size] = taps
    return dft(padded)


def apply_channel(sig: TimeSignal, taps) -> TimeSignal:
    """Convolve a prefix-extended signal with the channel taps.

    Linear convolution truncated to the input length; provided the cyclic
    prefix covers the channel memory, the prefix-free body then equals the
    cyclic convolution of the body with the zero-padded taps.
    """
    taps = np.asarray(taps, dtype=np.complex128)
    if not sig.cp_present:
        raise ValueError("channel must be applied to the prefix-extended signal")
    if taps.size - 1 > sig.cp_len:
        raise ValueError(
            f"inter-symbol interference: channel memory {taps.size - 1} exceeds "
            f"cyclic prefix length {sig.cp_len}"
        )
    out = np.convolve(sig.samples, taps)[: sig.samples.size]
    return TimeSignal(out, cp_present=True, cp_len=sig.cp_len)


def apply_cfo(sig: TimeSignal, eps: float, n: int) -> TimeSignal:
    """Multiply by the frequency-offset ramp exp(j2*pi*eps*n'/n).

    The sample index n' is referenced to the start of the prefix-free body
    (n' = 0 at the first body sample), matching the symbol synthesis
    convention.
    """
    offsets = np.arange(sig.samples.size) - (sig.cp_len if sig.cp_present else 0)
    ramp = np.exp(2j * np.pi * eps * offsets / n)
    return TimeSignal(sig.samples * ramp, sig.cp_present, sig.cp_len)


def add_awgn(sig: TimeSignal, noise_var: float, rng: np.random.Generator) -> TimeSignal:
    """Add circularly-symmetric white Gaussian noise, variance per sample.

    The noise draw happens even at noise_var = 0 so random streams stay
    aligned across runs that differ only in noise level.
    """
    if noise_var < 0:
        raise ValueError(f"noise variance must be >= 0, got {noise_var}")
    m = sig.samples.size
    noise = np.sqrt(noise_var / 2.0) * (rng.standard_normal(m) + 1j * rng.standard_normal(m))
    return TimeSignal(sig.samples + noise, sig.cp_present, sig.cp_len)
