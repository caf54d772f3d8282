from setuptools import Extension, setup

# The prime-field rank kernel is the only hot loop; everything else is
# desk-scale exact arithmetic.  The extension is optional: if it cannot be
# built, the package falls back to the pure-Python kernel at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "thetagib._modrank",
                ["src/thetagib/_modrank.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
