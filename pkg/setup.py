import os

from setuptools import setup

ext_modules = []
if os.environ.get("OKAFORGE_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "okaforge.kernels._ckernels",
                    ["src/okaforge/kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION"),
                                   # inline struct arithmetic instead of C99 complex (libgcc calls)
                                   ("CYTHON_CCOMPLEX", "0")],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
