"""Kernel backend selection: compiled extension if available, NumPy otherwise.

Set SLNET_BACKEND=py to force the fallback or SLNET_BACKEND=c to insist on
the compiled core (raising if it was not built).
"""

import os

_requested = os.environ.get("SLNET_BACKEND")

if _requested not in (None, "", "c", "py"):
    raise RuntimeError(f"SLNET_BACKEND must be 'c' or 'py', got {_requested!r}")

if _requested == "py":
    from . import _purepy as _impl
    BACKEND = "py"
else:
    try:
        from . import _core as _impl
        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise
        from . import _purepy as _impl
        BACKEND = "py"

successors_fold = _impl.successors_fold
successors_tables = _impl.successors_tables
find_cycles = _impl.find_cycles
