from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install; persprox.kernels falls back to the Python twins.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "persprox._kernels_c",
                ["src/persprox/_kernels_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
