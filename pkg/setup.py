"""Build script for the optional compiled scan kernel.

The package works without the extension (a pure-numpy fallback is selected
at import time); building it just makes the simulator's codebook scans much
faster.  `pip install -e . --no-build-isolation` compiles it when Cython and
a C compiler are available.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bislab.kernels._scan_c",
                ["src/bislab/kernels/_scan_c.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
