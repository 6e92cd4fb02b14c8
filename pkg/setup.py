from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("linkgrp._ckernels", ["src/linkgrp/_ckernels.pyx"])],
        language_level=3)
except ImportError:  # fall back to the pure-Python kernels
    ext_modules = []

setup(ext_modules=ext_modules)
