"""Low-pass filtering of distance curves via Nadaraya-Watson kernel regression.

The regression runs on a normalized time axis x_j = j/(L-1), so the
bandwidth is meaningful independent of curve length. Weights are Gaussian:
w_ij = exp(-(x_i - x_j)^2 / (2 h^2)). Output i is the convex combination
sum_j w_ij v_j / sum_j w_ij, hence always within [min(v), max(v)].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend

DEFAULT_BANDWIDTH = 0.08


@dataclass(frozen=True)
class SmootherConfig:
    bandwidth: float = DEFAULT_BANDWIDTH
    kernel: str = "gaussian-rbf"

    def __post_init__(self):
        if not (self.bandwidth > 0):
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.kernel != "gaussian-rbf":
            raise ValueError(f"unsupported kernel {self.kernel!r}")


def smooth_curve(values, config: SmootherConfig = SmootherConfig()) -> np.ndarray:
    """Smooth a 1-D curve; output has the same length as the input."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] < 1:
        raise ValueError("values must be a non-empty 1-D sequence")
    if not np.isfinite(values).all():
        raise ValueError("values must be finite")
    out = backend.smooth_uniform(values, config.bandwidth)
    # the exact result is a convex combination; clamp float residue so the
    # [min, max] contract holds identically
    return np.clip(out, values.min(), values.max())
