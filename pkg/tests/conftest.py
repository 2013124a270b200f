"""Shared reference routes for the oracle tests.

These helpers deliberately avoid the code paths they are used to check:
`dft_direct` is a plain double loop, and `ici_reference` assembles a
received spectrum from the closed-form leakage coefficients instead of
running the waveform pipeline.
"""
import numpy as np

from afrelay.transforms import cfo_spectrum


def dft_direct(x):
    """O(N^2) double-loop forward transform."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    out = np.empty(n, dtype=np.complex128)
    for k in range(n):
        acc = 0.0 + 0.0j
        for m in range(n):
            acc += x[m] * np.exp(-2j * np.pi * k * m / n)
        out[k] = acc
    return out


def leakage_vector(eps, n):
    """All leakage coefficients C(eps, k) for k = 0..n-1."""
    return np.array([cfo_spectrum(eps, k, n) for k in range(n)])


def ici_reference(symbols, freq_resp, eps, scale=1.0):
    """Received spectrum built from the closed form: the dominant term
    scale*C(eps,0)H[k]X[k] plus the directly summed inter-carrier series
    over r = 1..N-1 of scale*C(eps,r)H[k-r]X[k-r] (indices cyclic)."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    freq_resp = np.asarray(freq_resp, dtype=np.complex128)
    n = symbols.size
    coeffs = leakage_vector(eps, n)
    prod = freq_resp * symbols
    k = np.arange(n)
    total = coeffs[0] * prod
    for r in range(1, n):
        total = total + coeffs[r] * prod[(k - r) % n]
    return scale * total


def cgauss(rng, shape, var=1.0):
    """Circularly-symmetric complex Gaussian samples of the given variance."""
    return np.sqrt(var / 2.0) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
