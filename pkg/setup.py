"""Build hooks for the optional compiled rewrite kernel.

The package is pure Python by default; the extension is a drop-in accelerator
selected at import when present.  Building never blocks installation: if
Cython and a pre-generated C file are both missing, or the compiler fails,
the pure fallback is used.

    python setup.py build_ext --inplace    # compile the kernel in the tree
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

PYX = os.path.join("src", "surfalg", "_kernel", "_speedups.pyx")
C_SOURCE = os.path.join("src", "surfalg", "_kernel", "_speedups.c")


def extension_modules():
    source = None
    try:
        from Cython.Build import cythonize

        return cythonize(
            [
                Extension(
                    "surfalg._kernel._speedups",
                    [PYX],
                    extra_compile_args=["-O2"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass
    if os.path.exists(C_SOURCE):
        source = C_SOURCE
    if source is None:
        return []
    return [Extension("surfalg._kernel._speedups", [source], extra_compile_args=["-O2"])]


class optional_build_ext(build_ext):
    """Never fail the install over the accelerator."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(f"skipping compiled kernel ({exc}); pure-Python fallback stays active")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name} ({exc}); pure-Python fallback stays active")


setup(
    ext_modules=extension_modules(),
    cmdclass={"build_ext": optional_build_ext},
)
