"""Build script for the compiled elimination core.

The extension is an accelerator only; `finemw.linalg` falls back to the
pure-Python implementation whenever `finemw._ffelim` is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("finemw._ffelim", ["src/finemw/_ffelim.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
