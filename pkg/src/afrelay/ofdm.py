"""OFDM symbol construction and deconstruction.

One symbol is synthesized as x[n] = (1/N) sum_k X[k] exp[j2*pi*k(n-Ng)/N]
for 0 <= n <= N+Ng-1, i.e. the inverse transform of the data vector with
its last Ng samples copied in front as a cyclic prefix.  Sample n = Ng is
the start of the useful body; every downstream frequency-offset ramp uses
the same reference.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .transforms import idft

_QPSK = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j], dtype=np.complex128) / np.sqrt(2.0)
_QAM16_LEVELS = np.array([-3.0, -1.0, 1.0, 3.0])
# unit average power for equiprobable points
_QAM16 = (_QAM16_LEVELS[:, None] + 1j * _QAM16_LEVELS[None, :]).ravel() / np.sqrt(10.0)

CONSTELLATIONS = {"qpsk": _QPSK, "qam16": _QAM16}


@dataclass(frozen=True)
class OfdmParams:
    """Static modulation parameters shared by every trial."""

    n_subcarriers: int = 64
    cp_len: int = 16
    constellation: str = "qpsk"
    symbol_power: float = 1.0

    def __post_init__(self):
        if self.n_subcarriers < 8:
            raise ValueError(f"n_subcarriers must be >= 8, got {self.n_subcarriers}")
        if not 0 <= self.cp_len < self.n_subcarriers:
            raise ValueError(
                f"cp_len must satisfy 0 <= cp_len < n_subcarriers, got {self.cp_len}"
            )
        if self.constellation not in CONSTELLATIONS:
            raise ValueError(
                f"unknown constellation {self.constellation!r}, "
                f"expected one of {sorted(CONSTELLATIONS)}"
            )
        if not self.symbol_power > 0:
            raise ValueError(f"symbol_power must be > 0, got {self.symbol_power}")


@dataclass
class TimeSignal:
    """A baseband sample stream, tagged with its cyclic-prefix state.

    cp_len is the number of prefix samples at the front when cp_present,
    and 0 otherwise; phase ramps are referenced to sample index cp_len.
    """

    samples: np.ndarray
    cp_present: bool
    cp_len: int = field(default=0)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D vector")
        if not self.cp_present and self.cp_len != 0:
            raise ValueError("cp_len must be 0 once the prefix is removed")

    @property
    def body(self) -> np.ndarray:
        """The prefix-free portion of the signal."""
        return self.samples[self.cp_len:]


def draw_symbols(params: OfdmParams, rng: np.random.Generator) -> np.ndarray:
    """Draw one OFDM symbol of i.i.d. uniform constellation points.

    Points are scaled so the constellation's average power equals
    params.symbol_power (exact per point for QPSK).
    """
    table = CONSTELLATIONS[params.constellation] * np.sqrt(params.symbol_power)
    idx = rng.integers(0, table.size, params.n_subcarriers)
    return table[idx]


def modulate(symbols, params: OfdmParams) -> TimeSignal:
    """Inverse-transform a data vector and insert the cyclic prefix."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape != (params.n_subcarriers,):
        raise ValueError(
            f"expected {params.n_subcarriers} data symbols, got shape {symbols.shape}"
        )
    body = idft(symbols)
    if params.cp_len:
        samples = np.concatenate([body[-params.cp_len:], body])
    else:
        samples = body
    return TimeSignal(samples, cp_present=True, cp_len=params.cp_len)


def remove_cp(sig: TimeSignal, params: OfdmParams) -> TimeSignal:
    """Strip the cyclic prefix, keeping the last n_subcarriers samples."""
    if not sig.cp_present:
        raise ValueError("cyclic prefix already removed")
    expected = params.n_subcarriers + params.cp_len
    if sig.samples.size != expected:
        raise ValueError(
            f"expected {expected} samples (N={params.n_subcarriers} + "
            f"Ng={params.cp_len}), got {sig.samples.size}"
        )
    return TimeSignal(sig.samples[params.cp_len:], cp_present=False, cp_len=0)
