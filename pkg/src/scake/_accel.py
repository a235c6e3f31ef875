"""Optional numba acceleration.

Hot kernels are written once against plain numpy arrays and decorated with
:func:`njit`. When numba is importable and ``SCAKE_DISABLE_NUMBA`` is unset,
they are compiled; otherwise the very same bodies run as interpreted Python
over numpy arrays.
"""

import os

_DISABLED = os.environ.get("SCAKE_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

USE_NUMBA = _numba is not None


def njit(*args, **kwargs):
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return _numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def backend():
    return "numba" if USE_NUMBA else "python"
