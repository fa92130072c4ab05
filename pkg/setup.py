"""Build script for the optional compiled scoring core.

The package is pure Python plus one Cython extension (`blade._core`) holding
the hot scoring loops. If Cython or a C compiler is unavailable the build
falls through to the numpy fallback in `blade.kernels.pure`; everything keeps
working, just slower. Set BLADE_SKIP_EXT=1 to skip the extension on purpose.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BLADE_SKIP_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "blade._core",
                    ["src/blade/_core.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
