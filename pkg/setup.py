"""Build script: compiles the optional GF(2) kernel extension when Cython is present."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/khobs/_gf2core.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except Exception:
    # Pure-Python fallback is selected at import time; the extension is optional.
    ext_modules = []

setup(ext_modules=ext_modules)
