"""Backend selection for the numerical kernels.

The compiled module is used when it imports; setting ``SO21SR_PURE_PYTHON=1``
forces the pure-Python implementation.
"""

import os

from . import _kernels_py

if os.environ.get("SO21SR_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

unified_coefficients = _impl.unified_coefficients
even_coefficient = _impl.even_coefficient
mn = _impl.mn
geodesic_entries = _impl.geodesic_entries
geodesic_batch = _impl.geodesic_batch
digon_psi = _impl.digon_psi
digon_area = _impl.digon_area
bisect_area = _impl.bisect_area
fiber_point = _impl.fiber_point
fiber_scan = _impl.fiber_scan


def available_backends():
    """Kernel modules importable in this environment, python first."""
    backends = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        backends["cython"] = _ckernels
    return backends
