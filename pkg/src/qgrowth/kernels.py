"""Backend selection for the convolution kernels.

The compiled ``_ckernels`` module is used when it imports; otherwise, or when
``QGROWTH_PURE_PYTHON`` is set to a non-empty value, the pure-Python
``_pykernels`` fallback is used.  ``BACKEND`` names the active choice.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("QGROWTH_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

mul_trunc = _impl.mul_trunc
inv_trunc = _impl.inv_trunc

__all__ = ["BACKEND", "mul_trunc", "inv_trunc"]
