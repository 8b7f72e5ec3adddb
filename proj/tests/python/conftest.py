"""Assembles an importable fgl package from the build tree.

The C++ extension is built under the CMake binary dir while the pure-python
package sources live under python/fgl; tests stitch the two together in a
temp dir so `import fgl` works without an install step.
"""

import glob
import os
import shutil
import sys
import tempfile

_assembled = None


def _assemble_package():
    global _assembled
    if _assembled is not None:
        return _assembled
    core_dir = os.environ.get("FGL_CORE_DIR")
    package_dir = os.environ.get("FGL_PACKAGE_DIR")
    if not core_dir or not package_dir:
        # Fall back to the conventional in-repo build layout.
        root = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
        core_dir = os.path.join(root, "build", "python")
        package_dir = os.path.join(root, "python")
    candidates = glob.glob(os.path.join(core_dir, "_core*.so"))
    if not candidates:
        raise RuntimeError(f"no built _core extension found under {core_dir}")

    staging = tempfile.mkdtemp(prefix="fgl_pkg_")
    pkg = os.path.join(staging, "fgl")
    os.makedirs(pkg)
    shutil.copy(os.path.join(package_dir, "fgl", "__init__.py"), pkg)
    shutil.copy(candidates[0], pkg)
    sys.path.insert(0, staging)
    _assembled = staging
    return staging


_assemble_package()
