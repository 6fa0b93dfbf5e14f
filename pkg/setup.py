import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CLUSTERLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "clusterlab._core",
                    ["src/clusterlab/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: the pure-Python kernels are used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
