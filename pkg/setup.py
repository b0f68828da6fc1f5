"""Build script for the optional compiled propagator kernel.

The package is fully functional without the extension: adiagraph.adiabatic
falls back to a pure-NumPy stepping loop when `adiagraph._evolve_core` is
missing.  The extension only accelerates the Schrodinger propagator, which
dominates runtime for long adiabatic evolutions.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "adiagraph._evolve_core",
                ["src/adiagraph/_evolve_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
