import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("NCTORUS_PURE_PYTHON"):
    ext_modules = cythonize(
        [
            Extension(
                "nctorus._kernels",
                ["src/nctorus/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
