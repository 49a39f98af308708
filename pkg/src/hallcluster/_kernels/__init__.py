"""Hot finite-field kernels with a compiled core and a pure-Python fallback.

The compiled extension ``_ckernels`` is used when it imports; setting the
environment variable ``HALLCLUSTER_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

MODE_FIRST_INVERTIBLE = _pykernels.MODE_FIRST_INVERTIBLE
MODE_COUNT_INVERTIBLE = _pykernels.MODE_COUNT_INVERTIBLE
MODE_FIRST_SPLITTING = _pykernels.MODE_FIRST_SPLITTING

_impl = _pykernels
BACKEND = "python"
if os.environ.get("HALLCLUSTER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _pykernels

rref = _impl.rref
scan = _impl.scan

__all__ = [
    "BACKEND",
    "MODE_COUNT_INVERTIBLE",
    "MODE_FIRST_INVERTIBLE",
    "MODE_FIRST_SPLITTING",
    "rref",
    "scan",
]
