"""Backend dispatch for the numeric kernels.

The numba backend is used by default; set ``NEARFIELD_DISABLE_NUMBA=1``
(before import) to force the pure-numpy path. Both backends implement the
same algorithms and agree to rounding.
"""

import os

_disabled = os.environ.get("NEARFIELD_DISABLE_NUMBA", "").strip().lower() not in (
    "",
    "0",
    "false",
    "no",
)

if _disabled:
    from . import _numpy as _impl
else:
    # The TBB layer shipped on some systems is too old for numba and warns.
    os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")
    try:
        from . import _numba as _impl
    except ImportError:  # numba missing or broken
        from . import _numpy as _impl

BACKEND = _impl.NAME
FRESNEL_SWITCH = _impl.FRESNEL_SWITCH

fresnel_cs = _impl.fresnel_cs
phase_matrix = _impl.phase_matrix
dft_gains = _impl.dft_gains

__all__ = ["BACKEND", "FRESNEL_SWITCH", "fresnel_cs", "phase_matrix", "dft_gains"]
