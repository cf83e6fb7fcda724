"""Build script for the optional compiled Matern kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a missing compiler only costs speed, not functionality.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension(
            "promptbo._matern_cy",
            ["src/promptbo/_matern_cy.pyx"],
            extra_compile_args=["-O3", "-fopenmp"],
            extra_link_args=["-fopenmp"],
        )],
        compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, include_dirs=[np.get_include()])
