from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure-Python kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("recsign.unitlattice._kernels",
                   ["src/recsign/unitlattice/_kernels.pyx"],
                   optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
