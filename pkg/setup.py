from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install; omegalift.kernels falls back to _kernels_py.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("omegalift._kernels", ["src/omegalift/_kernels.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )

setup(ext_modules=ext_modules)
