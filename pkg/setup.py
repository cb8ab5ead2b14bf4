"""Build script: compiles the optional rasterizer extension.

The package works without the extension (a NumPy fallback is selected at
import); the build therefore tolerates a missing Cython or compiler and
installs pure-Python in that case.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "handforge.render._kernel",
                ["src/handforge/render/_kernel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                # forbid FMA contraction so the compiled kernel stays
                # bit-identical to the NumPy fallback
                extra_compile_args=["-ffp-contract=off"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
