"""Build the optional Cython kernel.

The package falls back to a numpy implementation when the extension is
missing, so a failed compile is not fatal.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ELASTOCAP_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "elastocap._ckernels",
                    ["src/elastocap/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
