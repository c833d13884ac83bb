"""Optional numba compilation.

Kernels are decorated with :func:`jit`. Setting ``ENCLOSE_NUMBA=0`` (or running
without numba installed) leaves them as plain Python over numpy arrays; the
flag is read once at import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("ENCLOSE_NUMBA", "1") not in ("0", "false", "no")


def jit(f=None, **options):
    options.setdefault("cache", True)
    if not USE_NUMBA:
        return f if f is not None else (lambda g: g)
    if f is None:
        return lambda g: numba.njit(g, **options)
    return numba.njit(f, **options)
