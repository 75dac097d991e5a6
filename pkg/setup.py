import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FRAME_LAB_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        # Fallback kernels in framelab._kernels_py are picked up at import.
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "framelab._kernels",
                    ["src/framelab/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
