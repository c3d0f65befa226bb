"""Build script for the optional compiled edit-distance kernel.

The package works without the extension; metrics fall back to the pure
Python kernel when the compiled module is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "factattr.metrics._levenshtein_c",
                ["src/factattr/metrics/_levenshtein_c.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
