"""Build script: compiles the hot-loop kernel if Cython is available.

The package works without the extension (a pure-Python twin of the kernel is
selected at import time), so a failed extension build is not fatal.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/widthspan/_kernel.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
