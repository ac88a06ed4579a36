from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    # -ffp-contract=off keeps the compiled kernels bit-compatible with the
    # pure-Python fallback (no fused multiply-adds).
    ext_modules = cythonize(
        [
            Extension(
                "slitstream._kernels._fastcore",
                ["src/slitstream/_kernels/_fastcore.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
