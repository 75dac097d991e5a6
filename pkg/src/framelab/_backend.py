"""Select the kernel implementation once, at import.

Set ``FRAME_LAB_PURE=1`` to force the pure-Python kernels even when the
compiled extension is importable.
"""
import os

if os.environ.get("FRAME_LAB_PURE") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

IMPLEMENTATION = kernels.IMPLEMENTATION


def use(name):
    """Swap the active kernels (``"cython"`` or ``"python"``); returns the previous name."""
    global kernels, IMPLEMENTATION
    previous = IMPLEMENTATION
    if name == "python":
        from . import _kernels_py as mod
    elif name == "cython":
        from . import _kernels as mod
    else:
        raise ValueError(f"unknown kernel implementation {name!r}")
    kernels = mod
    IMPLEMENTATION = mod.IMPLEMENTATION
    return previous


def compiled_available():
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return False
    return True
