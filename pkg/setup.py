"""Build hook for the optional compiled tokenizer.

The package is fully functional without the extension; when Cython or a
C compiler is missing, installation falls back to the pure-Python scanner.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/patchrepo/rdf/_scan_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
