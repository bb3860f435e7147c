import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DIOPHLAB_PURE") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "diophlab._scanext",
                    ["src/diophlab/_scanext.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        # No compiler / no Cython: the package still works on the numpy path.
        ext_modules = []

setup(ext_modules=ext_modules)
