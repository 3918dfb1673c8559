"""Build script: compiles the optional Cython kernel extension.

If Cython or a C compiler is unavailable the build proceeds without the
extension and the package falls back to the pure-numpy kernels at import.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qslice._kernels._native",
                sources=["src/qslice/_kernels/_native.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
