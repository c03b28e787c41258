from setuptools import setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        "src/dkchains/kernels/_speedups.pyx", language_level=3)
except ImportError:
    # pure-Python fallback is selected at import time
    ext_modules = []

setup(ext_modules=ext_modules)
