import sys

import numpy as np
from setuptools import Extension, setup

# naive complex products: the kernels never see inf/nan, and the C99 default
# routes every complex multiply through a slow library call
COMPILE_ARGS = [] if sys.platform == "win32" else ["-O3", "-fcx-limited-range"]

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the package falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "grover_anneal._rk4",
                ["src/grover_anneal/_rk4.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=COMPILE_ARGS,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
