import os

from setuptools import Extension, setup

# The compiled core is optional: the package falls back to the pure-Python
# kernels in epwplanes._purecore when the extension is absent.
ext_modules = []
if os.environ.get("EPWPLANES_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "epwplanes._fastcore",
                    ["src/epwplanes/_fastcore.pyx"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
