"""Build script: compiles the optional Cython kernel extension.

The extension is strictly optional; if Cython or a C compiler is missing the
install proceeds and the package falls back to the pure-Python kernels at
import time.  Set BESSELSTRUVE_PURE=1 to skip the compile attempt entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compile failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"WARNING: compiled kernels skipped ({exc}); "
              "falling back to pure-Python kernels")


ext_modules = []
if os.environ.get("BESSELSTRUVE_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/besselstruve/_fastkernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
