import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# twin at import time if the extension is missing or fails to build.
ext_modules = []
if os.environ.get("PEBBLING_NO_EXT") != "1" and os.path.exists("src/pebbling/_kernel_c.pyx"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "pebbling._kernel_c",
                    ["src/pebbling/_kernel_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
