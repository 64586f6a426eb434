# Builds the pybind11 extension through the project's CMake tree and drops the
# resulting _core module inside the qbaf package. Static metadata lives in
# pyproject.toml; this file only supplies the extension build step.

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "qbaf_core", "--parallel"],
            check=True,
        )

        produced = sorted((build_dir / "bindings").glob("_core.*"))
        if not produced:
            raise RuntimeError("CMake did not produce the _core extension module")
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(produced[-1], target)


setup(
    ext_modules=[CMakeExtension("qbaf._core")],
    cmdclass={"build_ext": CMakeBuild},
)
