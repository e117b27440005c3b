"""Pure-numpy smoothing kernels; fallback when the compiled extension is absent.

On the uniform time grid x_j = j/(L-1) the Gaussian weight depends only on
i - j, so the Nadaraya-Watson numerator and denominator are discrete
convolutions. Small curves use the direct tabulated sum (same arithmetic as
the compiled kernel); large curves go through FFT convolution, which turns
the quadratic cost into L log L.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

BACKEND_NAME = "python"

# direct summation below this length; FFT above
_DIRECT_MAX = 512


def _kernel_table(length: int, bandwidth: float) -> np.ndarray:
    # w(d) = exp(-(d/(L-1))^2 / (2 h^2)) for lags d = 0..L-1
    lags = np.arange(length, dtype=np.float64) / max(length - 1, 1)
    return np.exp(-(lags * lags) / (2.0 * bandwidth * bandwidth))


def smooth_uniform(values: np.ndarray, bandwidth: float) -> np.ndarray:
    """Gaussian Nadaraya-Watson regression of a curve on its own uniform grid."""
    values = np.asarray(values, dtype=np.float64)
    length = values.shape[0]
    if length == 1:
        return values.copy()
    table = _kernel_table(length, bandwidth)
    if length <= _DIRECT_MAX:
        lag = np.abs(np.arange(length)[:, None] - np.arange(length)[None, :])
        weights = table[lag]
        return (weights @ values) / weights.sum(axis=1)
    kernel = np.concatenate([table[:0:-1], table])
    num = fftconvolve(values, kernel, mode="same")
    den = fftconvolve(np.ones(length), kernel, mode="same")
    return num / den
