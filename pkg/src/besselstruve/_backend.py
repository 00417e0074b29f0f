"""Selects the numeric backend at import time.

The compiled extension is preferred when it imported cleanly; otherwise the
pure-Python twin takes over.  BESSELSTRUVE_PURE=1 forces the fallback (useful
for benchmarking and for debugging suspected extension issues); both backends
produce the same results up to a few ulp, so the choice never changes any
documented tolerance.
"""

import os

if os.environ.get("BESSELSTRUVE_PURE") == "1":
    from . import _pykernels as kernels
else:
    try:
        from . import _fastkernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as kernels


def backend_name() -> str:
    """Name of the active backend: "cython" or "python"."""
    return kernels.NAME
