from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: install without the compiled core; the NumPy fallback
    # kernels are selected automatically at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "slnet._core",
                ["src/slnet/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
