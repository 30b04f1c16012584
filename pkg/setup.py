import os

from setuptools import setup

# The compiled kernels are an optimization, not a requirement: every entry
# point has a pure fallback selected at import time.  Set KRONSTAB_NO_EXT=1
# to skip compilation entirely.
ext_modules = []
if not os.environ.get("KRONSTAB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/kronstab/_kernels_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
