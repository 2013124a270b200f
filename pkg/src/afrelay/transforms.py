"""DFT/IDFT kernels, cyclic convolution, and the CFO leakage coefficients.

Conventions: the forward transform is un-normalized and the inverse carries
the 1/N factor.  Under this pairing the transform of the unit-magnitude
frequency-offset ramp (1/N)exp(j2*pi*eps*n/N) is exactly the leakage
coefficient returned by `cfo_spectrum`, and `dirichlet_gain` is the
magnitude of its bin-0 value.
"""
from __future__ import annotations

import numpy as np

# Largest fractional frequency offset (in subcarrier spacings) after
# integer-offset correction.
FCFO_BOUND = 0.5

# Below this the singular-denominator argument of the Dirichlet kernel is
# treated as zero and the removable singularity is evaluated by its limit.
_SINGULAR_ARG = 1e-9


def require_fractional_cfo(eps: float, name: str = "eps") -> float:
    """Validate a fractional CFO value, |eps| < 0.5 subcarrier spacings."""
    eps = float(eps)
    if not np.isfinite(eps) or abs(eps) >= FCFO_BOUND:
        raise ValueError(
            f"{name}={eps!r} is not a fractional CFO: require |{name}| < {FCFO_BOUND} "
            "(integer offsets are assumed already corrected)"
        )
    return eps


def _as_vector(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D complex vector, got shape {arr.shape}")
    return arr


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def dft(x) -> np.ndarray:
    """Un-normalized forward transform Y[k] = sum_n x[n] exp(-j2*pi*k*n/N).

    Power-of-two lengths take the FFT fast path; any other length falls
    back to the direct O(N^2) sum.
    """
    x = _as_vector(x, "x")
    n = x.size
    if _is_pow2(n):
        return np.fft.fft(x)
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) @ x


def idft(spectrum) -> np.ndarray:
    """Inverse of `dft`: x[n] = (1/N) sum_k Y[k] exp(j2*pi*k*n/N)."""
    spectrum = _as_vector(spectrum, "spectrum")
    n = spectrum.size
    if _is_pow2(n):
        return np.fft.ifft(spectrum)
    k = np.arange(n)
    return (np.exp(2j * np.pi * np.outer(k, k) / n) @ spectrum) / n


def _fit_length(x, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.complex128)
    m = min(x.size, n)
    out[:m] = x[:m]
    return out


def circular_convolve(a, b, n: int) -> np.ndarray:
    """Length-n cyclic convolution out[m] = sum_r a[r] b[(m-r) mod n].

    Inputs are zero-padded or truncated to length n.  Evaluated by the
    direct sum so transform-domain identities can be checked against it.
    """
    if n <= 0:
        raise ValueError(f"cyclic length must be positive, got {n}")
    a = _fit_length(_as_vector(a, "a"), n)
    b = _fit_length(_as_vector(b, "b"), n)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return b[idx] @ a


def dirichlet_gain(eps: float, n: int) -> float:
    """Amplitude kept on the intended subcarrier under a fractional CFO.

    f(eps) = sin(pi*eps) / (n sin(pi*eps/n)); f(0) = 1, even in eps,
    strictly decreasing in |eps| on [0, 0.5].  Computed on |eps| so the
    even symmetry is exact.
    """
    if n < 2:
        raise ValueError(f"subcarrier count must be >= 2, got {n}")
    e = abs(float(eps))
    if np.pi * e / n < _SINGULAR_ARG:
        return 1.0
    return float(np.sin(np.pi * e) / (n * np.sin(np.pi * e / n)))


def dirichlet_gain_derivative(eps: float, n: int) -> float:
    """Analytic derivative of `dirichlet_gain` with respect to eps.

    Near the removable singularity at eps = 0 the leading-order expansion
    -(pi^2 eps / 3)(1 - 1/n^2) is used, which gives exactly 0 at eps = 0.
    """
    if n < 2:
        raise ValueError(f"subcarrier count must be >= 2, got {n}")
    e = float(eps)
    if abs(np.pi * e / n) < _SINGULAR_ARG:
        return -(np.pi ** 2) * e * (1.0 - 1.0 / n ** 2) / 3.0
    s, c = np.sin(np.pi * e), np.cos(np.pi * e)
    sn, cn = np.sin(np.pi * e / n), np.cos(np.pi * e / n)
    return float(np.pi * (n * c * sn - s * cn) / (n * sn) ** 2)


def cfo_spectrum(eps: float, k: int, n: int) -> complex:
    """Leakage coefficient of a fractional CFO onto bin k.

    Equals the `dft` of the ramp (1/n)exp(j2*pi*eps*t/n) at bin k:

        C(eps, k) = sin[pi(eps-k)] / (n sin[pi(eps-k)/n])
                    * exp[j pi (eps-k)(1 - 1/n)]

    with the removable singularity at eps = k evaluated by its limit.
    |C(eps, 0)| equals `dirichlet_gain(eps, n)` and sum_k |C(eps, k)|^2 = 1.
    """
    if not 0 <= k < n:
        raise ValueError(f"bin index k={k} out of range [0, {n})")
    theta = np.pi * (eps - k)
    if abs(theta / n) < _SINGULAR_ARG:
        mag = 1.0
    else:
        mag = np.sin(theta) / (n * np.sin(theta / n))
    return complex(mag * np.exp(1j * theta * (1.0 - 1.0 / n)))
