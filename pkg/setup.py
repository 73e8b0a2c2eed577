"""Build script: compiles the optional Cython alignment kernel.

The package works without the compiled extension (a pure-Python kernel is
selected at import time), so any build failure here downgrades to a
pure-Python install instead of aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    extensions = [
        Extension(
            "speechcut.alignment._nw_cy",
            ["src/speechcut/alignment/_nw_cy.pyx"],
            include_dirs=[numpy.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            extra_compile_args=["-O3"],
        )
    ]
    ext_modules = cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    print(f"speechcut: skipping Cython kernel build ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
