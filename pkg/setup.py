"""Build the optional Cython kernels.

The package works without them: ``choilab.kernels`` falls back to numpy
when ``choilab._core`` cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CHOILAB_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "choilab._core",
                    ["src/choilab/_core.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
