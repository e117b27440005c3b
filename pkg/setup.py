"""Build script for the optional compiled smoothing kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed extension build should not block
installation on exotic platforms: build with UVDKIT_SKIP_EXT=1 to opt out.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("UVDKIT_SKIP_EXT"):
        return []
    from Cython.Build import cythonize
    import numpy

    ext = Extension(
        "uvdkit._kernels",
        ["src/uvdkit/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=_extensions())
