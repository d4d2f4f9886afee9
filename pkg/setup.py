"""Build the optional Cython kernels; the package falls back to pure Python
when the extension is missing."""
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    try:
        ext_modules = cythonize(
            [
                Extension(
                    "so21sr._ckernels",
                    ["src/so21sr/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
