"""Kernel backend selection.

The compiled extension ``persprox._kernels_c`` is preferred when it imported
successfully; otherwise the pure-Python twin is used.  Set the environment
variable ``PERSPROX_BACKEND=py`` before import to force the Python backend.
"""

import os

from . import _kernels_py

_FORCED = os.environ.get("PERSPROX_BACKEND", "").strip().lower()

if _FORCED in ("py", "python", "pure"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl

        BACKEND = "c"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

lambert_w0 = _impl.lambert_w0
lambert_w0_exp = _impl.lambert_w0_exp
lambert_w0_exp_many = _impl.lambert_w0_exp_many
project_simplex = _impl.project_simplex
xlogx_sum = _impl.xlogx_sum
neg_entropy_prox = _impl.neg_entropy_prox
simplex_neg_entropy_prox = _impl.simplex_neg_entropy_prox


def available_backends():
    """Names of the importable kernel backends."""
    names = ["python"]
    try:
        from . import _kernels_c  # noqa: F401

        names.insert(0, "c")
    except ImportError:
        pass
    return names
