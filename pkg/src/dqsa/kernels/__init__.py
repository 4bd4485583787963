"""Hot state-update kernels with a compiled fast path and a numpy fallback.

The backend is chosen once at import from the env var ``DQSA_KERNELS``:
``cython`` forces the compiled extension (ImportError if missing), ``python``
forces the numpy implementation, ``auto`` (default) prefers the extension
when importable.  A given backend is fully deterministic (bitwise-identical
results across runs and thread counts); the two backends agree with each
other to within a few ulps, the only divergence being fused-multiply-add
use inside numpy's vectorised complex arithmetic.
"""

import os

from . import _python

_choice = os.environ.get("DQSA_KERNELS", "auto").lower()
if _choice not in {"auto", "cython", "python"}:
    raise ValueError(
        f"DQSA_KERNELS must be one of auto/cython/python, got {_choice!r}"
    )

backend = "python"
apply_diagonal_inplace = _python.apply_diagonal_inplace
apply_single_qubit_inplace = _python.apply_single_qubit_inplace

if _choice in {"auto", "cython"}:
    try:
        from . import _cykernels
    except ImportError:
        if _choice == "cython":
            raise ImportError(
                "DQSA_KERNELS=cython but the compiled extension is not available"
            )
    else:
        backend = "cython"
        apply_diagonal_inplace = _cykernels.apply_diagonal_inplace
        apply_single_qubit_inplace = _cykernels.apply_single_qubit_inplace


def backend_name() -> str:
    """Name of the active kernel backend ('cython' or 'python')."""
    return backend
