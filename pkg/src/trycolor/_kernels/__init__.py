"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it imports; set ``TRYCOLOR_PURE=1`` to force
the fallback. ``BACKEND`` names the active one.
"""
import os

from . import _pykernels

if os.environ.get("TRYCOLOR_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

eval_sequences = _impl.eval_sequences
pick_tuple = _impl.pick_tuple
mask_search = _impl.mask_search
dsatur_search = _impl.dsatur_search


def backend(name: str):
    """Return the kernel module ``"python"`` or ``"compiled"`` (for benchmarks and tests)."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
