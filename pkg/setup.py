"""Build the optional compiled kernels; the package still works without them."""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "labyrinth._kernels._core",
                ["src/labyrinth/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
