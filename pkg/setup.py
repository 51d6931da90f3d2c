"""Build hook: compiles the optional convolution kernel when Cython is present.

The package is fully functional without the extension; localp1p1.kernels
falls back to the pure-Python loop at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/localp1p1/_kernels.pyx",
        compiler_directives={"language_level": 3},
    )
except Exception as exc:  # no Cython / no compiler: install pure-Python only
    print("localp1p1: skipping compiled kernel (%s)" % exc)

setup(ext_modules=ext_modules)
