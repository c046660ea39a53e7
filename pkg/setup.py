"""Build script.

The compiled reduction-machine kernel is optional: if Cython or a C
compiler is unavailable the package installs without it and falls back to
the pure-Python implementation selected in lgsk.mdmachine.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lgsk/_mdfast.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - environment dependent
    print("skipping compiled kernel: %s" % exc)

setup(ext_modules=ext_modules)
