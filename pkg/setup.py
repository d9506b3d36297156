"""Build script for the optional compiled extension.

The package works without the extension (a NumPy implementation is selected
at import time); compiling it just makes the hot loops faster.
"""
from setuptools import setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        ["src/dyadkde/_speedups.pyx"],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    ),
)
