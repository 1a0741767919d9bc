"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python fallback is selected
at import time); set ANXARC_NO_EXT=1 to skip compilation explicitly.
"""

import os
import warnings

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ANXARC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "anxarc._kernel._ckernel",
                    ["src/anxarc/_kernel/_ckernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        warnings.warn(
            "Cython is not available; installing without the compiled kernel. "
            "The pure-Python fallback will be used."
        )

setup(ext_modules=ext_modules)
