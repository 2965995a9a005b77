"""Build script: compiles the optional reduction-kernel extension.

The package is fully functional without the extension; kernel.py falls
back to the pure-Python twin if the compiled module is missing.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            sys.stderr.write(
                "warning: compiled kernel skipped (%s); using pure Python\n" % exc
            )

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(
                "warning: %s skipped (%s); using pure Python\n" % (ext.name, exc)
            )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("conelift._kernel_cy", ["src/conelift/_kernel_cy.pyx"])],
        language_level="3",
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
