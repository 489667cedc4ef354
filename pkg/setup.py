"""Build script: compiles the optional exchange-rotation extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible; never fail the install over it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernel ({exc}); "
                  "falling back to the numpy implementation")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to the numpy implementation")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "exseq._kernel",
        ["src/exseq/_kernel.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
