"""Backend selection for the hot numeric kernels.

Every kernel exists twice: a numba ``@njit`` version in :mod:`.numba_impl`
and a plain numpy version in :mod:`.numpy_impl`.  The two are required to
agree to rounding.  Set ``DTOP_DISABLE_NUMBA=1`` (or numba's own
``NUMBA_DISABLE_JIT=1``) to force the numpy path; if numba cannot be
imported the numpy path is used silently.
"""

import os

from . import numpy_impl

_FALSY = ("", "0", "false", "no", "off")


def _flag(name):
    return os.environ.get(name, "").strip().lower() not in _FALSY


def _load_numba():
    if _flag("DTOP_DISABLE_NUMBA") or _flag("NUMBA_DISABLE_JIT"):
        return None
    try:
        from . import numba_impl
    except ImportError:  # numba missing or broken
        return None
    return numba_impl


numba_impl = _load_numba()
impl = numba_impl if numba_impl is not None else numpy_impl
BACKEND = "numba" if numba_impl is not None else "numpy"

toeplitz_fill = impl.toeplitz_fill
diagonal_residual = impl.diagonal_residual
rotation_average = impl.rotation_average
compensated_dot = impl.compensated_dot
power_iteration = impl.power_iteration

__all__ = [
    "BACKEND",
    "compensated_dot",
    "diagonal_residual",
    "impl",
    "numba_impl",
    "numpy_impl",
    "power_iteration",
    "rotation_average",
    "toeplitz_fill",
]
