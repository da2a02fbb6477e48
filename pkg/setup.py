"""Build hook: compile the optional Cython kernels, fall back to pure Python.

Set ZETALAB_NO_EXT=1 to skip the extension entirely (the package then runs
on the numpy fallback kernels selected at import time).
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("ZETALAB_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "zetalab._kernels._core",
                    ["src/zetalab/_kernels/_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level="3",
        )
    except Exception as exc:  # pragma: no cover - depends on build env
        print(f"zetalab: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
