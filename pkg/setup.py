"""Build the optional compiled kernels.

The package works without them: ``rydcp.kernels`` falls back to the numpy
implementation when ``rydcp._kernels`` cannot be imported.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RYDCP_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "rydcp._kernels",
                    ["src/rydcp/_kernels.pyx"],
                    extra_compile_args=["-O3", "-fno-math-errno"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
