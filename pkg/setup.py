"""Build script: compiles the Lloyd-iteration kernel when a C toolchain is available.

The package works without the extension; fairaudit._kernels falls back to a
numpy implementation at import time.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "fairaudit._kernels._lloyd",
                ["src/fairaudit/_kernels/_lloyd.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
