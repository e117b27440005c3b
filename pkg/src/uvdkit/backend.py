"""Import-time selection of the smoothing kernel implementation.

The compiled Cython kernel is preferred when present; the numpy/FFT
fallback is always available. Set UVDKIT_BACKEND=python or =compiled to
force a choice (forcing "compiled" fails loudly if the extension is
missing).
"""

from __future__ import annotations

import os

from . import _kernels_py

_forced = os.environ.get("UVDKIT_BACKEND", "").strip().lower()

if _forced == "python":
    _impl = _kernels_py
elif _forced == "compiled":
    from . import _kernels as _impl  # noqa: F401  (ImportError is the point)
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

# direct summation beats FFT only while the (near-dense) weight window is
# small; above this length both backends route through the FFT fallback
COMPILED_MAX_LENGTH = 512


def active_backend() -> str:
    """Name of the kernel implementation selected at import."""
    return _impl.BACKEND_NAME


def smooth_uniform(values, bandwidth: float):
    if _impl is not _kernels_py and len(values) <= COMPILED_MAX_LENGTH:
        return _impl.smooth_uniform(values, bandwidth)
    return _kernels_py.smooth_uniform(values, bandwidth)
