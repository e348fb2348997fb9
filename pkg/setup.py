"""Build script for the optional compiled kernels.

The package works without the extension: quantdiv.kernels falls back to the
numpy implementation when quantdiv._ckernels is absent, so any failure here
is downgraded to a warning and the build proceeds pure-Python.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping compiled kernels ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"failed to compile {ext.name} ({exc}); using pure-Python fallback")


if cythonize is not None:
    ext_modules = cythonize(
        [Extension("quantdiv._ckernels", ["src/quantdiv/_ckernels.pyx"])],
        language_level=3,
    )
else:
    ext_modules = []
    warnings.warn("Cython not available; building without compiled kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
