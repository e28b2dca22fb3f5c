"""Hot inner loops, compiled when the Cython extension is built.

Set ``BOHRLAB_PURE_PYTHON=1`` before import to force the fallback. ``BACKEND``
reports which implementation is active.
"""

import os

from . import _kernels_py

if os.environ.get("BOHRLAB_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

taylor_at = _impl.taylor_at
power_sum = _impl.power_sum
blaschke_expand = _impl.blaschke_expand
weighted_phi_sum = _impl.weighted_phi_sum

__all__ = ["BACKEND", "taylor_at", "power_sum", "blaschke_expand", "weighted_phi_sum"]
