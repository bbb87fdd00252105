"""Select the compiled kernels when available, else the pure-Python ones.

Set ``OPAV_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

python_kernels = _pykernels
compiled_kernels = None

if os.environ.get("OPAV_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:  # extension not built
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels


def available():
    """Kernel modules importable in this process, compiled first."""
    return [m for m in (compiled_kernels, python_kernels) if m is not None]


def use(name):
    """Switch the active kernels (``"cython"`` or ``"python"``); returns the module."""
    global kernels
    for mod in available():
        if mod.NAME == name:
            kernels = mod
            return mod
    raise ValueError(f"kernel backend {name!r} is not available")
