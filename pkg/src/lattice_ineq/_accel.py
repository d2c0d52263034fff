"""Backend selection for the hot kernels.

``LATTICE_INEQ_BACKEND=numpy`` forces the vectorized numpy path; anything else
(or unset) uses numba when it imports cleanly.
"""

import os

BACKEND_ENV = "LATTICE_INEQ_BACKEND"

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is optional
    nb = None

HAVE_NUMBA = nb is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get(BACKEND_ENV, "numba").lower() != "numpy"
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(function):
    """``numba.njit`` with strict IEEE semantics, or identity without numba."""
    if nb is None:
        return function
    return nb.njit(cache=True, nogil=True, fastmath=False)(function)
