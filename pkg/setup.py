from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension("tpal._ctrace", ["src/tpal/_ctrace.pyx"], extra_compile_args=["-O3"]),
]

setup(ext_modules=cythonize(extensions))
