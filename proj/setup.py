"""Builds the _fiso extension with setuptools; all metadata lives in pyproject.toml."""

import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

setup(
    ext_modules=[
        Pybind11Extension(
            "fiso._fiso",
            sorted(glob.glob("src/*.cpp")) + ["bindings/module.cpp"],
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
